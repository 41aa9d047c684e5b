#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fraclyap::lyapcheck {

/// Convex, differentiable V: R^d -> R with V(0) = 0 and an exact gradient.
///
/// Three families are supported:
///   - quadratic form  V(x) = x^T P x, P symmetric positive semi-definite;
///   - even-power sum  V(x) = sum_i w_i x_i^{2 m_i}, w_i > 0;
///   - linear          V(x) = <w, x>. Convex but sign-indefinite, so it only
///     serves the derivative inequality audit (where it gives equality).
class LyapunovCandidate {
 public:
  enum class Kind { kQuadratic, kEvenPowerSum, kLinear };

  /// Row-major d x d matrix. Throws ConstraintError unless P is symmetric and
  /// positive semi-definite (smallest eigenvalue >= -1e-12 * max |P_ij|).
  static LyapunovCandidate quadratic(std::size_t dim, std::vector<double> matrix);
  /// Throws ConstraintError unless every exponent is even and >= 2 and every
  /// weight is positive.
  static LyapunovCandidate even_power_sum(std::vector<unsigned> exponents,
                                          std::vector<double> weights);
  static LyapunovCandidate linear(std::vector<double> weights);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  /// P for quadratic forms, w for the other kinds.
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  const std::vector<unsigned>& exponents() const noexcept { return exponents_; }

  double evaluate(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  std::vector<double> gradient(std::span<const double> x) const;

  /// k V for k > 0.
  LyapunovCandidate scaled(double k) const;

  std::string describe() const;

 private:
  LyapunovCandidate(Kind kind, std::size_t dim, std::vector<double> coefficients,
                    std::vector<unsigned> exponents);

  Kind kind_;
  std::size_t dim_;
  std::vector<double> coefficients_;
  std::vector<unsigned> exponents_;
};

/// Largest relative deviation between the analytic gradient and a central
/// finite difference (step 1e-5) over `points` low-discrepancy points in B_r(0).
/// Relative to max(|analytic|, 1e-3).
double gradient_consistency(const LyapunovCandidate& v, double radius, std::size_t points,
                            std::uint64_t seed = 0);

}  // namespace fraclyap::lyapcheck
