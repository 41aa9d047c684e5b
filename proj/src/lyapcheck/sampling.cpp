#include "fraclyap/lyapcheck/sampling.hpp"

#include <array>
#include <cmath>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "fraclyap/errors.hpp"

namespace fraclyap::lyapcheck {
namespace {

constexpr std::array<unsigned, 24> kPrimes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

// Halton point with an optional Cranley-Patterson shift, kept inside (0, 1).
class ShiftedHalton {
 public:
  ShiftedHalton(std::size_t dims, std::uint64_t seed) : shift_(dims, 0.0) {
    if (dims > kPrimes.size()) throw DomainError("sampling supports at most 23 dimensions");
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (double& s : shift_) s = u(rng);
    }
  }

  double coordinate(std::uint64_t index, std::size_t dim) const {
    double v = radical_inverse(index, kPrimes[dim]) + shift_[dim];
    if (v >= 1.0) v -= 1.0;
    // Keep away from the endpoints so the normal quantile stays finite.
    return std::clamp(v, 1e-12, 1.0 - 1e-12);
  }

 private:
  std::vector<double> shift_;
};

void unit_direction(const ShiftedHalton& seq, std::uint64_t index, std::size_t dim,
                    double* out) {
  if (dim == 1) {
    out[0] = seq.coordinate(index, 1) < 0.5 ? -1.0 : 1.0;
    return;
  }
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * seq.coordinate(index, i + 1) - 1.0);
    norm2 += out[i] * out[i];
  }
  if (norm2 == 0.0) {
    out[0] = 1.0;
    norm2 = 1.0;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < dim; ++i) out[i] *= inv;
}

void check(std::size_t dim, double radius) {
  if (dim == 0) throw DomainError("sampling dimension must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sampling radius must be positive");
}

}  // namespace

std::vector<double> ball_samples(std::size_t dim, double radius, std::size_t count,
                                 std::uint64_t seed) {
  check(dim, radius);
  std::vector<double> points(count * dim, 0.0);
  const double inner = radius * kInnerRadiusFraction;

  // Axis points on the innermost and outermost spheres.
  std::size_t k = 0;
  for (double rr : {inner, radius}) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (double sign : {1.0, -1.0}) {
        if (k == count) return points;
        points[k * dim + i] = sign * rr;
        ++k;
      }
    }
  }

  const ShiftedHalton seq(dim + 1, seed);
  const double log_span = std::log(radius / inner);
  for (std::size_t index = 1; k < count; ++k, ++index) {
    const std::size_t shell = index % kRadialShells;
    const double u = (static_cast<double>(shell) + seq.coordinate(index, 0)) /
                     static_cast<double>(kRadialShells);
    const double rr = std::min(radius, inner * std::exp(u * log_span));
    double* p = points.data() + k * dim;
    unit_direction(seq, index, dim, p);
    for (std::size_t i = 0; i < dim; ++i) p[i] *= rr;
  }
  return points;
}

std::vector<double> sphere_samples(std::size_t dim, double radius, std::size_t count,
                                   std::uint64_t seed) {
  check(dim, radius);
  std::vector<double> points(count * dim, 0.0);
  if (dim == 1) {
    for (std::size_t k = 0; k < count; ++k) points[k] = (k % 2 == 0 ? radius : -radius);
    return points;
  }
  const ShiftedHalton seq(dim + 1, seed);
  for (std::size_t k = 0; k < count; ++k) {
    double* p = points.data() + k * dim;
    unit_direction(seq, k + 1, dim, p);
    for (std::size_t i = 0; i < dim; ++i) p[i] *= radius;
  }
  return points;
}

}  // namespace fraclyap::lyapcheck
