#pragma once

#include <vector>

#include "fraclyap/fracops/fractional_order.hpp"
#include "fraclyap/fracops/trajectory.hpp"

namespace fraclyap::fracops {

/// Estimate of gamma = lim_{t->0} (v(t) - v(0)) / t^alpha, per component.
struct GammaLimit {
  std::vector<double> gamma;
  /// Gamma(alpha + 1) * gamma, the Caputo derivative at t = 0.
  std::vector<double> caputo_at_zero;
  /// Largest disagreement inside the extrapolation table (over components).
  double stderr_estimate = 0.0;
  /// False when the table spread exceeds ten times the final correction.
  bool reliable = true;
};

/// Riemann-Liouville integral (I^alpha x)(t_k) at every node. The data is
/// interpolated piecewise-linearly and the kernel (t - s)^{alpha - 1} is
/// integrated exactly on every cell, so the result is exact for
/// piecewise-linear x. Node 0 is zero.
SampledTrajectory rl_integral(const SampledTrajectory& x, FractionalOrder alpha);

/// Richardson extrapolation of (v(t) - v(0)) / t^alpha from t = dt, 2dt, 4dt, 8dt.
///
/// The quotient is modelled as gamma + sum_e c_e t^e with exponents drawn from
/// {j alpha + k - alpha > 0 : j, k >= 0}, which covers both smooth data
/// (t^{1 - alpha}, t^{2 - alpha}, ...) and the power series of solutions of
/// Caputo equations (t^alpha, t^{2 alpha}, t, ...). The three smallest
/// distinct exponents are eliminated. Requires at least 8 steps.
GammaLimit gamma_limit(const SampledTrajectory& v, FractionalOrder alpha);

/// Caputo derivative at every node.
///
/// Node k >= 1 uses the representation
///   D v(t) = (v(t) - v(0)) / (Gamma(1 - a) t^a)
///            + a / Gamma(1 - a) * int_0^t (v(t) - v(s)) / (t - s)^{a + 1} ds.
/// The singular part gamma t^a is split off first (its derivative is the
/// constant Gamma(a + 1) gamma); the remainder is interpolated
/// piecewise-linearly and the (t - s)^{-a-1} kernel is integrated exactly on
/// every cell, the diagonal cell through the difference quotient. Node 0 is
/// Gamma(a + 1) gamma. Requires at least 4 steps.
SampledTrajectory caputo_derivative(const SampledTrajectory& v, FractionalOrder alpha);

}  // namespace fraclyap::fracops
