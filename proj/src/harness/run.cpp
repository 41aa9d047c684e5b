#include "fraclyap/harness/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fraclyap/errors.hpp"
#include "fraclyap/fdesolve/solver.hpp"
#include "fraclyap/format.hpp"
#include "fraclyap/lyapcheck/sampling.hpp"

namespace fraclyap::harness {
namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::string join(std::span<const double> x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? " " : "") + format_double(x[i]);
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

// gamma_limit needs nodes up to 8 dt.
constexpr std::size_t kMinAuditSteps = 8;

void audit_trajectory(const ScenarioConfig& cfg, const fdesolve::Field& field, TrajectoryOutcome& out) {
  const auto& u = *out.solution;
  if (u.steps() < kMinAuditSteps) return;
  out.audit = cfg.audit_source == lyapcheck::DerivativeSource::kField
                  ? lyapcheck::audit_inequality(u, cfg.lyapunov, cfg.alpha, field)
                  : lyapcheck::audit_inequality(u, cfg.lyapunov, cfg.alpha);
  out.audit_tolerance = lyapcheck::audit_tolerance(u.dt(), cfg.alpha);
  out.audit_passed = out.audit->max_margin <= out.audit_tolerance;
}

void compare_trajectory(const ScenarioConfig& cfg, bool conditions_hold, TrajectoryOutcome& out) {
  const auto& k = cfg.constants;
  if (k.C3 <= 0.0) {
    out.comparison_note = "C3 = 0, no decay rate to compare against";
    return;
  }
  if (!conditions_hold) {
    out.comparison_note = "envelope or decay condition not verified";
    return;
  }
  if (norm(out.x0) > k.r) {
    out.comparison_note = "initial point outside B_r";
    return;
  }
  const double y0 = cfg.lyapunov.evaluate(out.x0);
  if (!(y0 > 0.0)) {
    out.comparison_note = "V(x0) = 0";
    return;
  }
  // D V <= -C3 |x|^c <= -C3 (V / C2)^{c/b} on B_r.
  const double p = k.c / k.b;
  const double a = -k.C3 / std::pow(k.C2, p);
  const auto& u = *out.solution;
  const auto phi = fdesolve::solve_scalar_comparison(a, p, y0, cfg.alpha, u.horizon(), u.steps());
  const auto vt = lyapcheck::evaluate_along(u, cfg.lyapunov);
  out.comparison = lyapcheck::audit_comparison(
      vt, phi.trajectory, lyapcheck::comparison_tolerance(u.dt(), cfg.alpha, y0));
}

std::string build_report(const RunArtifacts& run, double wall_seconds) {
  const ScenarioConfig& cfg = run.config;
  std::ostringstream out;
  out << "scenario: " << cfg.name << "\n";
  out << "alpha: " << format_double(cfg.alpha.value()) << "\n";
  out << "field: " << describe_field(cfg.field) << "\n";
  out << "lyapunov: " << cfg.lyapunov.describe() << "\n";
  out << "horizon: " << format_double(cfg.horizon) << "\n";
  out << "steps: " << cfg.steps << "\n";
  out << "seed: " << cfg.seed << "\n";
  out << "samples: " << cfg.samples << "\n";
  out << "derivative: " << (cfg.audit_source == lyapcheck::DerivativeSource::kField ? "field" : "numeric")
      << "\n";
  out << "defaults_applied: ";
  if (cfg.defaults_applied.empty()) out << "none";
  for (std::size_t i = 0; i < cfg.defaults_applied.size(); ++i) out << (i ? ", " : "") << cfg.defaults_applied[i];
  out << "\n";
  out << run.report.to_text();
  out << "envelope_violations: " << run.envelope.violations << " of " << run.envelope.samples << "\n";
  out << "decay_violations: " << run.decay.violations << " of " << run.decay.samples << "\n";
  if (run.certificate) {
    out << "certificate_lambda_min: " << format_double(run.certificate->lambda_min) << "\n";
    out << "certificate_decay: " << (run.certificate->certifies_decay ? "yes" : "no") << "\n";
  }
  for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
    const TrajectoryOutcome& t = run.trajectories[i];
    const std::string key = "trajectory_" + std::to_string(i) + "_";
    out << key << "x0: " << join(t.x0) << "\n";
    if (!t.solution) {
      out << key << "status: diverged after node " << t.last_valid_node << " (" << t.divergence << ")\n";
      continue;
    }
    out << key << "status: ok\n";
    out << key << "final_norm: " << format_double(t.final_norm) << "\n";
    if (t.audit) {
      out << key << "audit_max_margin: " << format_double(t.audit->max_margin) << "\n";
      out << key << "audit_tolerance: " << format_double(t.audit_tolerance) << "\n";
      out << key << "audit: " << (t.audit_passed ? "pass" : "fail") << "\n";
    } else {
      out << key << "audit: skipped (needs at least " << kMinAuditSteps << " steps)\n";
    }
    if (t.comparison) {
      out << key << "comparison_worst_gap: " << format_double(t.comparison->worst_gap) << " at node "
          << t.comparison->worst_node << "\n";
      out << key << "comparison_tolerance: " << format_double(t.comparison->tolerance) << "\n";
      out << key << "comparison: " << (t.comparison->passed ? "pass" : "fail") << "\n";
    } else {
      out << key << "comparison: skipped (" << t.comparison_note << ")\n";
    }
    out << key << "csv: " << t.csv.filename().string() << "\n";
  }
  out << "all_checks_passed: " << (run.all_passed() ? "true" : "false") << "\n";
  out << "wall_time_s: " << format_double(std::round(wall_seconds * 1e3) / 1e3) << "\n";
  return out.str();
}

}  // namespace

bool RunArtifacts::all_passed() const {
  if (report.verdict == lyapcheck::Verdict::kInconclusive) return false;
  for (const auto& t : trajectories) {
    if (!t.solution) return false;
    if (t.audit && !t.audit_passed) return false;
    if (t.comparison && !t.comparison->passed) return false;
  }
  return true;
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  RunArtifacts run{cfg, {}, {}, {}, {}, {}, {}, {}};
  ensure_dir(cfg.output_dir);

  run.envelope = lyapcheck::verify_envelope(cfg.lyapunov, cfg.constants, cfg.samples, cfg.seed);
  run.decay = lyapcheck::verify_decay(cfg.lyapunov, cfg.field, cfg.constants, cfg.samples, cfg.seed);
  run.report = lyapcheck::classify_stability(run.envelope, run.decay, cfg.constants, cfg.K);
  run.certificate = lyapcheck::quadratic_certificate(cfg.lyapunov, cfg.field);
  const bool conditions_hold = run.envelope.passed && run.decay.passed;

  const fdesolve::Field field = fdesolve::lipschitz_extension(cfg.field, cfg.constants.r);
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.initial_points.size(); ++i) {
    TrajectoryOutcome out;
    out.x0 = cfg.initial_points[i];
    try {
      out.solution = fdesolve::solve_abm({cfg.alpha, field, out.x0, cfg.horizon, cfg.steps});
    } catch (const DivergenceError& e) {
      out.divergence = e.what();
      out.last_valid_node = e.last_valid_node();
      run.trajectories.push_back(std::move(out));
      continue;
    }
    const auto& u = *out.solution;
    out.final_norm = norm(u.at(u.steps()));
    audit_trajectory(cfg, field, out);
    if (out.audit) worst_margin = std::max(worst_margin, out.audit->max_margin);
    compare_trajectory(cfg, conditions_hold, out);
    out.csv = cfg.output_dir / (cfg.name + "_traj" + std::to_string(i) + ".csv");
    emit_csv(out.csv, u, cfg.lyapunov, out.audit ? &*out.audit : nullptr);
    run.trajectories.push_back(std::move(out));
  }
  if (std::isfinite(worst_margin)) run.report.audit_margin_max = worst_margin;

  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started;
  run.report_text = build_report(run, wall.count());
  run.report_path = cfg.output_dir / (cfg.name + "_report.txt");
  write_text(run.report_path, run.report_text);
  return run;
}

std::string ProbeOutcome::to_text() const {
  std::ostringstream out;
  out << "probe: finite-horizon check on [0, " << format_double(horizon) << "], not a proof\n";
  out << "eps: " << format_double(eps) << "\n";
  out << "delta: " << format_double(delta) << " (K = " << format_double(K) << ")\n";
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out << "start_" << i << ": " << join(starts[i]) << " sup_norm = " << format_double(sup_norms[i]) << "\n";
  }
  out << "sup_norm: " << format_double(sup_norm) << "\n";
  out << "stayed_inside_eps: " << (stayed_inside ? "true" : "false") << "\n";
  return out.str();
}

ProbeOutcome stability_probe(const ScenarioConfig& cfg, double eps, std::size_t points) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("probe eps must be positive");
  if (!(eps < cfg.constants.r)) throw ValidationError("probe eps must be smaller than the ball radius r");
  if (points == 0) throw ValidationError("probe needs at least one point");

  ProbeOutcome probe;
  probe.eps = eps;
  probe.horizon = cfg.horizon;
  const auto choice = lyapcheck::delta_for_epsilon(eps, cfg.constants, cfg.K);
  probe.delta = choice.delta;
  probe.K = choice.K;

  const std::size_t d = cfg.field.dim();
  if (d == 1) points = std::min<std::size_t>(points, 2);
  // Strictly inside the delta-ball.
  const auto xs = lyapcheck::sphere_samples(d, probe.delta * (1.0 - 1e-9), points, cfg.seed);
  const fdesolve::Field field = fdesolve::lipschitz_extension(cfg.field, cfg.constants.r);
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<double> x0(xs.begin() + i * d, xs.begin() + (i + 1) * d);
    double sup = std::numeric_limits<double>::infinity();
    try {
      const auto u = fdesolve::solve_abm({cfg.alpha, field, x0, cfg.horizon, cfg.steps});
      sup = 0.0;
      for (std::size_t k = 0; k < u.nodes(); ++k) sup = std::max(sup, norm(u.at(k)));
    } catch (const DivergenceError&) {
    }
    probe.starts.push_back(std::move(x0));
    probe.sup_norms.push_back(sup);
    probe.sup_norm = std::max(probe.sup_norm, sup);
  }
  probe.stayed_inside = probe.sup_norm < eps;
  return probe;
}

void emit_csv(const std::filesystem::path& path, const fracops::SampledTrajectory& u,
              const lyapcheck::LyapunovCandidate& v, const lyapcheck::InequalityAudit* audit) {
  if (audit && audit->margin.size() != u.nodes()) {
    throw ShapeError("emit_csv: audit has " + std::to_string(audit->margin.size()) +
                     " nodes, trajectory has " + std::to_string(u.nodes()));
  }
  if (v.dim() != u.dim()) throw ShapeError("emit_csv: candidate dimension differs from trajectory");
  std::string text = "t";
  for (std::size_t i = 0; i < u.dim(); ++i) text += ",x_" + std::to_string(i);
  text += ",V,caputoV,rhs_inner,margin\n";
  const std::string none = ",nan,nan,nan";
  for (std::size_t k = 0; k < u.nodes(); ++k) {
    text += format_double(u.time(k));
    for (double x : u.at(k)) text += "," + format_double(x);
    text += "," + format_double(audit ? audit->v[k] : v.evaluate(u.at(k)));
    if (audit) {
      text += "," + format_double(audit->caputo_v[k]) + "," + format_double(audit->rhs_inner[k]) + "," +
              format_double(audit->margin[k]);
    } else {
      text += none;
    }
    text += "\n";
  }
  write_text(path, text);
}

std::filesystem::path write_remark4(const std::filesystem::path& dir, double horizon, std::size_t steps) {
  const auto fixture = lyapcheck::remark4_fixture(horizon, steps);
  ensure_dir(dir);
  std::string csv = "t,x\n";
  const auto& x = fixture.trajectory;
  for (std::size_t k = 0; k < x.nodes(); ++k) csv += format_double(x.time(k)) + "," + format_double(x(k)) + "\n";
  write_text(dir / "remark4.csv", csv);

  std::ostringstream out;
  out << "function: 1/(1+t) + sin t + 1\n";
  out << "horizon: " << format_double(horizon) << "\n";
  out << "steps: " << steps << "\n";
  out << "min_value: " << format_double(fixture.min_value) << "\n";
  out << "max_value: " << format_double(fixture.max_value) << "\n";
  out << "positive: " << (fixture.positive ? "true" : "false") << "\n";
  out << "non_convergent: " << (fixture.non_convergent ? "true" : "false") << "\n";
  for (const auto& d : fixture.dips) {
    out << "dip_" << d.k << ": t = " << format_double(d.t) << " x = " << format_double(d.value)
        << " 1/(1+t) = " << format_double(d.expected) << "\n";
  }
  const auto report = dir / "remark4_report.txt";
  write_text(report, out.str());
  return report;
}

}  // namespace fraclyap::harness
