#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fraclyap/fracops/trajectory.hpp"
#include "fraclyap/harness/config.hpp"
#include "fraclyap/lyapcheck/audit.hpp"
#include "fraclyap/lyapcheck/remark4.hpp"
#include "fraclyap/lyapcheck/verification.hpp"

namespace fraclyap::harness {

struct TrajectoryOutcome {
  std::vector<double> x0;
  std::optional<fracops::SampledTrajectory> solution;  ///< empty after divergence
  std::string divergence;                              ///< solver message, if any
  std::size_t last_valid_node = 0;

  std::optional<lyapcheck::InequalityAudit> audit;  ///< needs at least 8 steps
  double audit_tolerance = 0.0;
  bool audit_passed = false;

  std::optional<lyapcheck::ComparisonAudit> comparison;
  std::string comparison_note;  ///< why the comparison was skipped

  std::filesystem::path csv;
  double final_norm = 0.0;
};

struct RunArtifacts {
  ScenarioConfig config;
  std::vector<TrajectoryOutcome> trajectories;
  lyapcheck::VerificationResult envelope;
  lyapcheck::VerificationResult decay;
  lyapcheck::StabilityReport report;
  std::optional<lyapcheck::QuadraticCertificate> certificate;
  std::filesystem::path report_path;
  std::string report_text;

  /// Verdict is not inconclusive, no trajectory diverged, and every audit
  /// and comparison that ran passed.
  bool all_passed() const;
};

/// Solves every initial point (field extended outside B_r), audits the
/// inequality, runs the comparison check where it applies, verifies the
/// envelope and decay conditions, and writes one CSV per trajectory plus
/// `<name>_report.txt` into cfg.output_dir (created if needed).
/// Throws IoError when the output cannot be written.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

struct ProbeOutcome {
  double eps = 0.0;
  double delta = 0.0;
  double K = 0.0;
  double horizon = 0.0;
  std::vector<std::vector<double>> starts;
  std::vector<double> sup_norms;  ///< sup_t |x(t)| per start; inf after divergence
  double sup_norm = 0.0;
  bool stayed_inside = false;     ///< every sup_norm < eps

  std::string to_text() const;
};

/// Finite-horizon check of the epsilon-delta statement: starts on the sphere
/// of radius delta(eps) and records sup |x(t)| over [0, horizon].
/// Throws ValidationError unless 0 < eps < r.
ProbeOutcome stability_probe(const ScenarioConfig& cfg, double eps, std::size_t points);

/// Writes `t,x_0..x_{d-1},V,caputoV,rhs_inner,margin`. Audit columns are
/// "nan" when `audit` is null. ShapeError when the audit length differs from
/// the trajectory; IoError (naming the path) when the file cannot be written.
void emit_csv(const std::filesystem::path& path, const fracops::SampledTrajectory& u,
              const lyapcheck::LyapunovCandidate& v, const lyapcheck::InequalityAudit* audit);

/// `t,x` samples of the oscillating positive function plus a report of its
/// dips; returns the report path.
std::filesystem::path write_remark4(const std::filesystem::path& dir, double horizon, std::size_t steps);

}  // namespace fraclyap::harness
