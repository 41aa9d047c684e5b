#include "fraclyap/lyapcheck/verification.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fraclyap/errors.hpp"
#include "fraclyap/format.hpp"
#include "fraclyap/lyapcheck/sampling.hpp"

namespace fraclyap::lyapcheck {
namespace {

double norm(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

void check_inputs(const LyapunovCandidate& v, const EnvelopeConstants& k, std::size_t samples) {
  k.validate();
  if (samples < kMinSamples) {
    throw ConstraintError("verification needs at least " + std::to_string(kMinSamples) + " samples");
  }
  (void)v;
}

// Visits every sample; `check` appends violations for one point.
using PointCheck = std::function<void(std::span<const double>, std::vector<Witness>&)>;

VerificationResult sweep(std::size_t dim, const EnvelopeConstants& k, std::size_t samples,
                         std::uint64_t seed, const PointCheck& check) {
  const auto points = ball_samples(dim, k.r, samples, seed);
  VerificationResult result;
  result.samples = samples;
  std::vector<Witness> found;
  for (std::size_t s = 0; s < samples; ++s) {
    found.clear();
    check(std::span<const double>(points.data() + s * dim, dim), found);
    result.violations += found.size();
    for (auto& w : found) {
      if (result.witnesses.size() < kMaxWitnesses) result.witnesses.push_back(std::move(w));
    }
  }
  result.passed = result.violations == 0;
  return result;
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

std::optional<std::string> EnvelopeConstants::problem() const {
  if (!positive_finite(C1)) return "C1 must be positive";
  if (!positive_finite(C2)) return "C2 must be positive";
  if (!(C3 >= 0.0) || !std::isfinite(C3)) return "C3 must be non-negative";
  if (!positive_finite(a)) return "a must be positive";
  if (!positive_finite(b)) return "b must be positive";
  if (!positive_finite(c)) return "c must be positive";
  if (!positive_finite(r)) return "r must be positive";
  if (C3 > 0.0 && c < b) return "C3 > 0 requires c >= b";
  return std::nullopt;
}

void EnvelopeConstants::validate() const {
  if (auto p = problem()) throw ConstraintError("envelope constants: " + *p);
}

VerificationResult verify_envelope(const LyapunovCandidate& v, const EnvelopeConstants& k,
                                   std::size_t samples, std::uint64_t seed) {
  check_inputs(v, k, samples);
  return sweep(v.dim(), k, samples, seed, [&](std::span<const double> x, std::vector<Witness>& out) {
    const double value = v.evaluate(x);
    const double n = norm(x);
    const double lower = k.C1 * std::pow(n, k.a);
    const double upper = k.C2 * std::pow(n, k.b);
    const std::vector<double> point(x.begin(), x.end());
    if (lower > value + kEnvelopeRelativeTolerance * std::max(std::abs(lower), std::abs(value))) {
      out.push_back({"lower-envelope", point, lower, value});
    }
    if (value > upper + kEnvelopeRelativeTolerance * std::max(std::abs(upper), std::abs(value))) {
      out.push_back({"upper-envelope", point, value, upper});
    }
  });
}

VerificationResult verify_decay(const LyapunovCandidate& v, const fdesolve::VectorFieldSpec& f,
                                const EnvelopeConstants& k, std::size_t samples,
                                std::uint64_t seed, double tolerance) {
  check_inputs(v, k, samples);
  if (f.dim() != v.dim()) throw ShapeError("candidate and vector field dimensions differ");
  std::vector<double> grad(v.dim()), fx(v.dim());
  return sweep(v.dim(), k, samples, seed, [&](std::span<const double> x, std::vector<Witness>& out) {
    v.gradient(x, grad);
    f.evaluate(x, fx);
    const double inner = std::inner_product(grad.begin(), grad.end(), fx.begin(), 0.0);
    const double bound = -k.C3 * std::pow(norm(x), k.c);
    if (inner - bound > tolerance) {
      out.push_back({"decay", std::vector<double>(x.begin(), x.end()), inner, bound});
    }
  });
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kStable: return "stable";
    case Verdict::kAsymptoticallyStable: return "asymptotically-stable";
    case Verdict::kInconclusive: break;
  }
  return "inconclusive";
}

StabilityReport classify_stability(const VerificationResult& envelope,
                                   const VerificationResult& decay, const EnvelopeConstants& k,
                                   double K) {
  StabilityReport report;
  report.constants = k;
  report.witnesses = envelope.witnesses;
  report.witnesses.insert(report.witnesses.end(), decay.witnesses.begin(), decay.witnesses.end());

  if (auto p = k.problem()) {
    report.reason = "invalid constants: " + *p;
    return report;
  }
  if (!envelope.passed || !decay.passed || !report.witnesses.empty()) {
    report.reason = !envelope.passed ? "envelope condition violated" : "decay condition violated";
    return report;
  }
  if (k.C3 == 0.0) {
    report.verdict = Verdict::kStable;
    report.reason = "envelope and decay hold with C3 = 0";
  } else {
    report.verdict = Verdict::kAsymptoticallyStable;
    report.reason = "envelope and decay hold with C3 > 0 and c >= b";
  }
  for (double fraction : {0.5, 0.2, 0.1, 0.01}) {
    report.delta_table.push_back(delta_for_epsilon(fraction * k.r, k, K));
  }
  return report;
}

std::string StabilityReport::to_text() const {
  std::ostringstream out;
  out << "verdict: " << to_string(verdict) << "\n";
  out << "qualifier: " << qualifier << "\n";
  out << "reason: " << reason << "\n";
  out << "C1: " << format_double(constants.C1) << "\n";
  out << "C2: " << format_double(constants.C2) << "\n";
  out << "C3: " << format_double(constants.C3) << "\n";
  out << "a: " << format_double(constants.a) << "\n";
  out << "b: " << format_double(constants.b) << "\n";
  out << "c: " << format_double(constants.c) << "\n";
  out << "r: " << format_double(constants.r) << "\n";
  out << "audit_margin_max: " << format_double(audit_margin_max) << "\n";
  out << "witness_count: " << witnesses.size() << "\n";
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const Witness& w = witnesses[i];
    out << "witness_" << i << ": " << w.condition << " x = [";
    for (std::size_t j = 0; j < w.x.size(); ++j) out << (j ? " " : "") << format_double(w.x[j]);
    out << "] lhs = " << format_double(w.lhs) << " rhs = " << format_double(w.rhs) << "\n";
  }
  for (const DeltaChoice& d : delta_table) {
    out << "delta_for_eps_" << format_double(d.eps) << ": " << format_double(d.delta) << " (K = " << format_double(d.K)
        << ")\n";
  }
  return out.str();
}

DeltaChoice delta_for_epsilon(double eps, const EnvelopeConstants& k, double K) {
  k.validate();
  if (!positive_finite(eps)) throw ConstraintError("delta_for_epsilon: eps must be positive");
  if (!(K > 1.0) || !std::isfinite(K)) throw ConstraintError("delta_for_epsilon: K must exceed 1");
  const double base = std::pow(k.C1 / k.C2, 1.0 / k.b) * std::pow(eps, k.a / k.b);
  DeltaChoice choice{eps, base / K, K};
  while (!(choice.delta < eps)) {
    choice.K *= 2.0;
    choice.delta = base / choice.K;
  }
  return choice;
}

std::optional<QuadraticCertificate> quadratic_certificate(const LyapunovCandidate& v,
                                                          const fdesolve::VectorFieldSpec& f) {
  if (v.kind() != LyapunovCandidate::Kind::kQuadratic || f.dim() != v.dim()) return std::nullopt;
  const std::size_t d = v.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& term : f.terms()) {
    if (term.degree() != 1) return std::nullopt;
    const auto j = static_cast<std::size_t>(
        std::find(term.exponents.begin(), term.exponents.end(), 1u) - term.exponents.begin());
    m(term.target, j) += term.coefficient;
  }
  Eigen::MatrixXd p(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) p(i, j) = v.coefficients()[i * d + j];
  }
  const Eigen::MatrixXd q = -(p * m + m.transpose() * p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  QuadraticCertificate cert;
  cert.lambda_min = eig.eigenvalues().minCoeff();
  const double scale = std::max(q.cwiseAbs().maxCoeff(), 1e-300);
  cert.certifies_decay = cert.lambda_min >= -1e-12 * scale;
  return cert;
}

}  // namespace fraclyap::lyapcheck
