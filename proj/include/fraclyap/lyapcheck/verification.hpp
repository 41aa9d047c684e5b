#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraclyap/fdesolve/vector_field.hpp"
#include "fraclyap/lyapcheck/candidate.hpp"

namespace fraclyap::lyapcheck {

/// Constants of the envelope and decay conditions on the ball B_r(0):
///   C1 |x|^a <= V(x) <= C2 |x|^b,   <grad V(x), f(x)> <= -C3 |x|^c.
struct EnvelopeConstants {
  double C1 = 1.0;
  double C2 = 1.0;
  double C3 = 0.0;
  double a = 2.0;
  double b = 2.0;
  double c = 2.0;
  double r = 1.0;

  /// Empty when valid, otherwise the first violated rule.
  std::optional<std::string> problem() const;
  /// Throws ConstraintError naming the violated rule.
  void validate() const;
};

inline constexpr std::size_t kMinSamples = 1000;
inline constexpr std::size_t kMaxWitnesses = 10;
/// Absolute slack for the decay inequality.
inline constexpr double kDecayTolerance = 1e-12;
/// Relative slack for the envelope inequalities (both sides are O(|x|^a) and
/// may legitimately coincide, e.g. V = |x|^2 with C1 = C2 = 1, a = b = 2).
inline constexpr double kEnvelopeRelativeTolerance = 1e-12;

struct Witness {
  std::string condition;  ///< "lower-envelope", "upper-envelope" or "decay"
  std::vector<double> x;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct VerificationResult {
  bool passed = false;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// First kMaxWitnesses violating points in sampling order.
  std::vector<Witness> witnesses;
};

/// Checks the two-sided envelope at `samples` deterministic points of B_r(0)
/// (see ball_samples). A pass is numerical evidence, not proof.
/// Throws ConstraintError on invalid constants or samples < 1000.
VerificationResult verify_envelope(const LyapunovCandidate& v, const EnvelopeConstants& k,
                                   std::size_t samples, std::uint64_t seed = 0);

/// Checks <grad V(x), f(x)> + C3 |x|^c <= tolerance on the same point set.
VerificationResult verify_decay(const LyapunovCandidate& v, const fdesolve::VectorFieldSpec& f,
                                const EnvelopeConstants& k, std::size_t samples,
                                std::uint64_t seed = 0, double tolerance = kDecayTolerance);

enum class Verdict { kStable, kAsymptoticallyStable, kInconclusive };

std::string to_string(Verdict verdict);

struct DeltaChoice {
  double eps = 0.0;
  double delta = 0.0;
  double K = 0.0;  ///< effective K after doubling
};

struct StabilityReport {
  Verdict verdict = Verdict::kInconclusive;
  EnvelopeConstants constants;
  std::vector<Witness> witnesses;
  std::vector<DeltaChoice> delta_table;
  /// Largest audit margin seen; filled in by callers that run audits.
  double audit_margin_max = 0.0;
  std::string qualifier = "numerical evidence";
  std::string reason;

  /// key: value lines.
  std::string to_text() const;
};

/// Both pass and C3 = 0 -> stable; both pass, C3 > 0 and c >= b ->
/// asymptotically stable; anything else, including invalid constants, is
/// inconclusive. The delta table covers eps in {r/2, r/5, r/10, r/100}.
StabilityReport classify_stability(const VerificationResult& envelope,
                                   const VerificationResult& decay, const EnvelopeConstants& k,
                                   double K = 2.0);

/// delta = (1/K) (C1/C2)^{1/b} eps^{a/b}, with K doubled until delta < eps.
/// Throws ConstraintError on invalid constants, eps <= 0 or K <= 1.
DeltaChoice delta_for_epsilon(double eps, const EnvelopeConstants& k, double K = 2.0);

/// Exact certificate for V = x^T P x and linear f(x) = M x:
///   <grad V, f> = -x^T Q x with Q = -(P M + M^T P),
/// so the decay condition holds with c = 2 and any C3 <= lambda_min(Q).
struct QuadraticCertificate {
  double lambda_min = 0.0;  ///< smallest eigenvalue of Q
  bool certifies_decay = false;  ///< Q positive semi-definite
};

/// Empty unless V is quadratic and f is linear with matching dimension.
std::optional<QuadraticCertificate> quadratic_certificate(const LyapunovCandidate& v,
                                                          const fdesolve::VectorFieldSpec& f);

}  // namespace fraclyap::lyapcheck
