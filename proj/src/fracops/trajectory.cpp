#include "fraclyap/fracops/trajectory.hpp"

#include <cmath>
#include <string>

#include "fraclyap/errors.hpp"

namespace fraclyap::fracops {

SampledTrajectory::SampledTrajectory(double dt, std::size_t dim, std::vector<double> values)
    : dt_(dt), dim_(dim), values_(std::move(values)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("trajectory time step must be positive and finite");
  }
  if (dim == 0) throw DomainError("trajectory dimension must be at least 1");
  if (values_.size() % dim != 0) {
    throw DomainError("trajectory buffer size is not a multiple of the dimension");
  }
  if (values_.size() / dim < 2) throw DomainError("trajectory needs at least two nodes");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("trajectory value at node " + std::to_string(i / dim) +
                        " is not finite");
    }
  }
}

SampledTrajectory SampledTrajectory::sample(
    double dt, std::size_t steps, std::size_t dim,
    const std::function<void(double, std::span<double>)>& fn) {
  std::vector<double> values((steps + 1) * dim);
  for (std::size_t k = 0; k <= steps; ++k) {
    fn(static_cast<double>(k) * dt, std::span<double>(values.data() + k * dim, dim));
  }
  return {dt, dim, std::move(values)};
}

SampledTrajectory SampledTrajectory::sample_scalar(double dt, std::size_t steps,
                                                   const std::function<double(double)>& fn) {
  std::vector<double> values(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) values[k] = fn(static_cast<double>(k) * dt);
  return {dt, 1, std::move(values)};
}

std::vector<double> SampledTrajectory::component(std::size_t i) const {
  std::vector<double> out(nodes());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[k * dim_ + i];
  return out;
}

SampledTrajectory linear_combination(double a, const SampledTrajectory& x, double b,
                                     const SampledTrajectory& y) {
  if (!x.same_grid(y) || x.dim() != y.dim()) {
    throw ShapeError("linear_combination: trajectories live on different grids");
  }
  std::vector<double> out(x.flat().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x.flat()[i] + b * y.flat()[i];
  return {x.dt(), x.dim(), std::move(out)};
}

}  // namespace fraclyap::fracops
