#pragma once

#include <cstddef>
#include <vector>

#include "fraclyap/fdesolve/vector_field.hpp"
#include "fraclyap/fracops/fractional_order.hpp"
#include "fraclyap/fracops/trajectory.hpp"

namespace fraclyap::fdesolve {

/// Caputo initial value problem D^alpha x = field(x), x(0) = x0 on [0, horizon]
/// with `steps` uniform steps.
struct IVProblem {
  fracops::FractionalOrder alpha;
  Field field;
  std::vector<double> x0;
  double horizon = 1.0;
  std::size_t steps = 1;

  double dt() const noexcept { return horizon / static_cast<double>(steps); }
  /// Throws DomainError if the horizon, step count or x0 are invalid.
  void validate() const;
};

/// States with a component above this magnitude are treated as blow-up.
inline constexpr double kDivergenceThreshold = 1e12;

/// Fractional Adams-Bashforth-Moulton predictor-corrector: one product-
/// rectangle predictor and one product-trapezoid corrector per step, with the
/// full history retained. Node 0 is x0 exactly. Summation order is fixed, so
/// identical problems give bit-identical trajectories.
///
/// Throws DivergenceError (carrying the last valid node) when a state turns
/// non-finite or exceeds kDivergenceThreshold.
fracops::SampledTrajectory solve_abm(const IVProblem& problem);

struct ComparisonSolution {
  fracops::SampledTrajectory trajectory;
  /// Number of predictor or corrector values that were negative and clamped to 0.
  std::size_t clamp_events = 0;
};

/// Scalar majorant D^alpha y = a y^p, y(0) = y0 with a <= 0, p >= 1, y0 > 0,
/// solved by the same scheme. Negative stage values are clamped to 0 and counted.
/// Throws DomainError outside that parameter regime.
ComparisonSolution solve_scalar_comparison(double a, double p, double y0,
                                           fracops::FractionalOrder alpha, double horizon,
                                           std::size_t steps);

}  // namespace fraclyap::fdesolve
