#include "fraclyap/fdesolve/solver.hpp"

#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "fraclyap/errors.hpp"
#include "fraclyap/fracops/special_functions.hpp"
#include "fraclyap/fracops/weights.hpp"

namespace fraclyap::fdesolve {
namespace {

using fracops::ProductWeights;
using RightHandSide = std::function<void(std::span<const double>, std::span<double>)>;
// Applied to every predictor and corrector state; returns the number of clamps.
using StageFilter = std::function<std::size_t(std::span<double>)>;

struct AbmResult {
  std::vector<double> values;
  std::size_t clamp_events = 0;
};

AbmResult abm(double alpha, std::span<const double> x0, double horizon, std::size_t steps,
              const RightHandSide& rhs, const StageFilter& filter) {
  const std::size_t d = x0.size();
  const double h = horizon / static_cast<double>(steps);
  const auto rect = ProductWeights::rectangle(alpha, steps);
  const auto interior = ProductWeights::trapezoid_interior(alpha, steps);
  const double predictor_scale = std::pow(h, alpha) / fracops::gamma_fn(alpha + 1.0);
  const double corrector_scale = std::pow(h, alpha) / fracops::gamma_fn(alpha + 2.0);

  AbmResult result;
  result.values.assign((steps + 1) * d, 0.0);
  std::vector<double> history((steps + 1) * d, 0.0);
  std::copy(x0.begin(), x0.end(), result.values.begin());
  rhs(x0, std::span<double>(history.data(), d));

  std::vector<double> predictor_sum(d), corrector_sum(d), stage(d), stage_rhs(d);
  for (std::size_t n = 0; n < steps; ++n) {
    const std::size_t next = n + 1;
    const double first = ProductWeights::trapezoid_first(alpha, next);
    for (std::size_t i = 0; i < d; ++i) {
      predictor_sum[i] = rect[next] * history[i];
      corrector_sum[i] = first * history[i];
    }
    for (std::size_t j = 1; j <= n; ++j) {
      const double b = rect[next - j];
      const double a = interior[next - j];
      const double* f = history.data() + j * d;
      for (std::size_t i = 0; i < d; ++i) {
        predictor_sum[i] += b * f[i];
        corrector_sum[i] += a * f[i];
      }
    }

    for (std::size_t i = 0; i < d; ++i) stage[i] = x0[i] + predictor_scale * predictor_sum[i];
    result.clamp_events += filter(stage);
    rhs(stage, stage_rhs);

    double* x = result.values.data() + next * d;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = x0[i] + corrector_scale * (stage_rhs[i] + corrector_sum[i]);
    }
    result.clamp_events += filter(std::span<double>(x, d));
    for (std::size_t i = 0; i < d; ++i) {
      if (!std::isfinite(x[i]) || std::abs(x[i]) > kDivergenceThreshold) {
        throw DivergenceError("solver diverged at node " + std::to_string(next) +
                                  " (t = " + std::to_string(next * h) + ")",
                              n);
      }
    }
    rhs(std::span<const double>(x, d), std::span<double>(history.data() + next * d, d));
  }
  return result;
}

}  // namespace

void IVProblem::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("problem horizon must be positive and finite");
  }
  if (steps < 1) throw DomainError("problem needs at least one step");
  if (x0.size() != field_dim(field)) {
    throw DomainError("initial state dimension does not match the vector field");
  }
  for (double v : x0) {
    if (!std::isfinite(v)) throw DomainError("initial state must be finite");
  }
}

fracops::SampledTrajectory solve_abm(const IVProblem& problem) {
  problem.validate();
  const Field& field = problem.field;
  auto rhs = [&field](std::span<const double> x, std::span<double> out) {
    evaluate_field(field, x, out);
  };
  auto no_filter = [](std::span<double>) -> std::size_t { return 0; };
  auto result = abm(problem.alpha.value(), problem.x0, problem.horizon, problem.steps, rhs,
                    no_filter);
  return {problem.dt(), problem.x0.size(), std::move(result.values)};
}

ComparisonSolution solve_scalar_comparison(double a, double p, double y0,
                                           fracops::FractionalOrder alpha, double horizon,
                                           std::size_t steps) {
  if (!(a <= 0.0)) throw DomainError("comparison equation needs a <= 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("comparison equation needs p >= 1");
  if (!(y0 > 0.0) || !std::isfinite(y0)) throw DomainError("comparison equation needs y0 > 0");
  if (!(horizon > 0.0) || steps < 1) throw DomainError("comparison horizon and steps must be positive");

  auto rhs = [a, p](std::span<const double> y, std::span<double> out) {
    out[0] = a * std::pow(y[0], p);
  };
  auto clamp = [](std::span<double> y) -> std::size_t {
    if (y[0] < 0.0) {
      y[0] = 0.0;
      return 1;
    }
    return 0;
  };
  const double start[] = {y0};
  auto result = abm(alpha.value(), start, horizon, steps, rhs, clamp);
  return {fracops::SampledTrajectory(horizon / static_cast<double>(steps), 1,
                                     std::move(result.values)),
          result.clamp_events};
}

}  // namespace fraclyap::fdesolve
