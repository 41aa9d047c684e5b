#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fraclyap::fracops {

/// Values of a d-dimensional function on the uniform grid t_k = k * dt,
/// k = 0..N. Storage is node-major: node k occupies [k*d, (k+1)*d).
class SampledTrajectory {
 public:
  /// Throws DomainError unless dt > 0, dim >= 1, the flat buffer holds at
  /// least two nodes and every value is finite.
  SampledTrajectory(double dt, std::size_t dim, std::vector<double> values);

  /// Samples `fn(t, out)` at nodes 0..steps.
  static SampledTrajectory sample(
      double dt, std::size_t steps, std::size_t dim,
      const std::function<void(double, std::span<double>)>& fn);

  /// Scalar convenience overload.
  static SampledTrajectory sample_scalar(double dt, std::size_t steps,
                                         const std::function<double(double)>& fn);

  double dt() const noexcept { return dt_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Number of intervals N; there are N + 1 nodes.
  std::size_t steps() const noexcept { return values_.size() / dim_ - 1; }
  std::size_t nodes() const noexcept { return values_.size() / dim_; }
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt_; }
  double horizon() const noexcept { return time(steps()); }

  std::span<const double> at(std::size_t k) const noexcept {
    return {values_.data() + k * dim_, dim_};
  }
  double operator()(std::size_t k, std::size_t i = 0) const noexcept {
    return values_[k * dim_ + i];
  }

  std::vector<double> component(std::size_t i) const;
  const std::vector<double>& flat() const noexcept { return values_; }

  bool same_grid(const SampledTrajectory& other) const noexcept {
    return dt_ == other.dt_ && nodes() == other.nodes();
  }

 private:
  double dt_;
  std::size_t dim_;
  std::vector<double> values_;
};

/// a*x + b*y on a shared grid; throws ShapeError on mismatch.
SampledTrajectory linear_combination(double a, const SampledTrajectory& x, double b,
                                     const SampledTrajectory& y);

}  // namespace fraclyap::fracops
