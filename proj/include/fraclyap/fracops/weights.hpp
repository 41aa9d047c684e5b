#pragma once

#include <cstddef>
#include <vector>

namespace fraclyap::fracops {

/// Product-integration weight tables on a uniform grid. All tables are
/// indexed by the lag m = n - j between the evaluation node n and the data
/// node j, which makes them Toeplitz and reusable across nodes. Entries are
/// evaluated with expm1/log1p (and an asymptotic series for the second
/// differences) so large lags keep full relative precision.
struct ProductWeights {
  /// Piecewise-linear (trapezoidal) weights for the kernel (t - s)^{alpha - 1}:
  ///   I^alpha x(t_n) ~ h^alpha / Gamma(alpha + 2) *
  ///       (first(n) x_0 + sum_{j=1}^{n-1} interior[n - j] x_j + x_n).
  /// interior[m] = (m+1)^{a+1} - 2 m^{a+1} + (m-1)^{a+1} for m >= 1.
  static std::vector<double> trapezoid_interior(double alpha, std::size_t max_lag);
  /// first(n) = (n-1)^{a+1} - (n-1-a) n^a.
  static double trapezoid_first(double alpha, std::size_t n);

  /// Piecewise-constant (rectangle) weights: rect[m] = m^a - (m-1)^a, m >= 1,
  /// so that I^alpha x(t_n) ~ h^alpha / Gamma(alpha + 1) sum_j rect[n - j] x_j.
  static std::vector<double> rectangle(double alpha, std::size_t max_lag);

  /// First differences m^{p} - (m-1)^{p} for arbitrary real p, m >= 1.
  static std::vector<double> power_difference(double power, std::size_t max_lag);
};

}  // namespace fraclyap::fracops
