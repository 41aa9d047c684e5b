#include "fraclyap/lyapcheck/audit.hpp"

#include <cmath>
#include <numeric>

#include "fraclyap/errors.hpp"
#include "fraclyap/fracops/operators.hpp"

namespace fraclyap::lyapcheck {
namespace {

using fracops::SampledTrajectory;

// `du` holds D^alpha u node-major, one d-vector per node.
InequalityAudit assemble(const SampledTrajectory& u, const LyapunovCandidate& v,
                         fracops::FractionalOrder alpha, const std::vector<double>& du) {
  const std::size_t d = u.dim();
  const auto vu = evaluate_along(u, v);
  const auto dv = fracops::caputo_derivative(vu, alpha);

  InequalityAudit audit;
  const std::size_t n = u.nodes();
  audit.v.assign(vu.flat().begin(), vu.flat().end());
  audit.caputo_v.assign(dv.flat().begin(), dv.flat().end());
  audit.rhs_inner.resize(n);
  audit.margin.resize(n);
  std::vector<double> grad(d);
  audit.max_margin = -INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    v.gradient(u.at(k), grad);
    audit.rhs_inner[k] = std::inner_product(grad.begin(), grad.end(), du.begin() + k * d, 0.0);
    audit.margin[k] = audit.caputo_v[k] - audit.rhs_inner[k];
    audit.max_margin = std::max(audit.max_margin, audit.margin[k]);
    audit.max_abs_margin = std::max(audit.max_abs_margin, std::abs(audit.margin[k]));
  }
  return audit;
}

void check_dims(const SampledTrajectory& u, const LyapunovCandidate& v) {
  if (u.dim() != v.dim()) {
    throw ShapeError("audit: trajectory has " + std::to_string(u.dim()) +
                     " components but the candidate expects " + std::to_string(v.dim()));
  }
}

}  // namespace

SampledTrajectory evaluate_along(const SampledTrajectory& u, const LyapunovCandidate& v) {
  check_dims(u, v);
  std::vector<double> values(u.nodes());
  for (std::size_t k = 0; k < u.nodes(); ++k) values[k] = v.evaluate(u.at(k));
  return {u.dt(), 1, std::move(values)};
}

InequalityAudit audit_inequality(const SampledTrajectory& u, const LyapunovCandidate& v,
                                 fracops::FractionalOrder alpha) {
  check_dims(u, v);
  const auto du = fracops::caputo_derivative(u, alpha);
  return assemble(u, v, alpha, std::vector<double>(du.flat().begin(), du.flat().end()));
}

InequalityAudit audit_inequality(const SampledTrajectory& u, const LyapunovCandidate& v,
                                 fracops::FractionalOrder alpha, const fdesolve::Field& field) {
  check_dims(u, v);
  if (fdesolve::field_dim(field) != u.dim()) {
    throw ShapeError("audit: vector field and trajectory dimensions differ");
  }
  const std::size_t d = u.dim();
  std::vector<double> du(u.nodes() * d);
  for (std::size_t k = 0; k < u.nodes(); ++k) {
    fdesolve::evaluate_field(field, u.at(k), std::span<double>(du.data() + k * d, d));
  }
  return assemble(u, v, alpha, du);
}

double audit_tolerance(double dt, fracops::FractionalOrder alpha) {
  const double a = alpha.value();
  return kAuditToleranceConstant * std::pow(dt, std::min(a, 1.0 - a));
}

double comparison_tolerance(double dt, fracops::FractionalOrder alpha, double scale) {
  return kComparisonToleranceConstant * std::pow(dt, 1.0 + alpha.value()) * std::abs(scale);
}

ComparisonAudit audit_comparison(const SampledTrajectory& vtraj, const SampledTrajectory& phi,
                                 double tolerance) {
  if (vtraj.dim() != 1 || phi.dim() != 1) throw ShapeError("audit_comparison: expects scalar trajectories");
  if (!vtraj.same_grid(phi)) throw ShapeError("audit_comparison: trajectories are on different grids");
  ComparisonAudit audit;
  audit.tolerance = tolerance;
  audit.worst_gap = -INFINITY;
  audit.worst_gap_after_start = -INFINITY;
  for (std::size_t k = 0; k < vtraj.nodes(); ++k) {
    const double gap = vtraj(k) - phi(k);
    if (k > 0) audit.worst_gap_after_start = std::max(audit.worst_gap_after_start, gap);
    if (gap > audit.worst_gap) {
      audit.worst_gap = gap;
      audit.worst_node = k;
    }
  }
  audit.passed = audit.worst_gap <= tolerance;
  return audit;
}

}  // namespace fraclyap::lyapcheck
