#include <cmath>

#include <gtest/gtest.h>

#include "fraclyap/errors.hpp"
#include "fraclyap/lyapcheck/verification.hpp"

namespace fraclyap::lyapcheck {
namespace {

using fdesolve::VectorFieldSpec;

LyapunovCandidate square() { return LyapunovCandidate::quadratic(1, {1.0}); }
VectorFieldSpec minus_cube() { return {1, {{0, -1.0, {3}}}}; }
VectorFieldSpec identity() { return {1, {{0, 1.0, {1}}}}; }

// C1 = C2 = 1, a = b = 2, C3 = 2, c = 4, r = 1.
EnvelopeConstants example_two() { return {1.0, 1.0, 2.0, 2.0, 2.0, 4.0, 1.0}; }

TEST(Envelope, SquareWithUnitConstantsPasses) {
  const auto res = verify_envelope(square(), example_two(), 1000);
  EXPECT_TRUE(res.passed);
  EXPECT_TRUE(res.witnesses.empty());
  EXPECT_EQ(res.samples, 1000u);
}

TEST(Envelope, IdentityQuadraticFormPasses) {
  const auto v = LyapunovCandidate::quadratic(2, {1.0, 0.0, 0.0, 1.0});
  EXPECT_TRUE(verify_envelope(v, {1.0, 1.0, 0.0, 2.0, 2.0, 2.0, 1.0}, 4000).passed);
}

TEST(Envelope, TooLargeLowerConstantFails) {
  const auto res = verify_envelope(square(), {2.0, 2.0, 0.0, 2.0, 2.0, 2.0, 1.0}, 1000);
  EXPECT_FALSE(res.passed);
  ASSERT_EQ(res.witnesses.size(), kMaxWitnesses);
  EXPECT_EQ(res.violations, 1000u);
  for (const auto& w : res.witnesses) {
    EXPECT_EQ(w.condition, "lower-envelope");
    EXPECT_NE(w.x[0], 0.0);
    EXPECT_GT(w.lhs, w.rhs);
  }
}

TEST(Envelope, EigenvalueBoundsOfQuadraticForm) {
  // Eigenvalues 1 and 3: the envelope holds with C1 = 1, C2 = 3 but not C2 = 2.9.
  const auto v = LyapunovCandidate::quadratic(2, {2.0, 1.0, 1.0, 2.0});
  EXPECT_TRUE(verify_envelope(v, {1.0, 3.0, 0.0, 2.0, 2.0, 2.0, 1.0}, 4000).passed);
  EXPECT_FALSE(verify_envelope(v, {1.0, 2.9, 0.0, 2.0, 2.0, 2.0, 1.0}, 4000).passed);
  EXPECT_FALSE(verify_envelope(v, {1.1, 3.0, 0.0, 2.0, 2.0, 2.0, 1.0}, 4000).passed);
}

TEST(Envelope, InputChecks) {
  EXPECT_THROW(verify_envelope(square(), example_two(), 999), ConstraintError);
  auto bad = example_two();
  bad.C1 = 0.0;
  EXPECT_THROW(verify_envelope(square(), bad, 1000), ConstraintError);
  bad = example_two();
  bad.c = 1.0;  // C3 > 0 needs c >= b
  EXPECT_THROW(verify_envelope(square(), bad, 1000), ConstraintError);
}

TEST(Decay, ExampleTwoPasses) {
  EXPECT_TRUE(verify_decay(square(), minus_cube(), example_two(), 1000).passed);
}

TEST(Decay, ZeroFieldWithZeroRatePasses) {
  auto k = example_two();
  k.C3 = 0.0;
  EXPECT_TRUE(verify_decay(square(), VectorFieldSpec::zero(1), k, 1000).passed);
}

TEST(Decay, GrowingFieldFails) {
  auto k = example_two();
  k.C3 = 0.0;
  const auto res = verify_decay(square(), identity(), k, 1000);
  EXPECT_FALSE(res.passed);
  EXPECT_FALSE(res.witnesses.empty());
  EXPECT_EQ(res.witnesses.front().condition, "decay");
}

TEST(Decay, RateTooLargeFails) {
  auto k = example_two();
  k.C3 = 2.5;
  EXPECT_FALSE(verify_decay(square(), minus_cube(), k, 1000).passed);
}

TEST(Decay, SameSeedSameWitnesses) {
  auto k = example_two();
  k.C3 = 0.0;
  const auto a = verify_decay(square(), identity(), k, 1000, 42);
  const auto b = verify_decay(square(), identity(), k, 1000, 42);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) EXPECT_EQ(a.witnesses[i].x, b.witnesses[i].x);
}

TEST(Classify, Verdicts) {
  auto k = example_two();
  const auto env = verify_envelope(square(), k, 1000);
  const auto dec = verify_decay(square(), minus_cube(), k, 1000);
  const auto report = classify_stability(env, dec, k);
  EXPECT_EQ(report.verdict, Verdict::kAsymptoticallyStable);
  EXPECT_EQ(report.qualifier, "numerical evidence");
  EXPECT_TRUE(report.witnesses.empty());
  EXPECT_FALSE(report.delta_table.empty());

  k.C3 = 0.0;
  const auto stable = classify_stability(verify_envelope(square(), k, 1000),
                                         verify_decay(square(), minus_cube(), k, 1000), k);
  EXPECT_EQ(stable.verdict, Verdict::kStable);

  const auto bad = classify_stability(verify_envelope(square(), k, 1000),
                                      verify_decay(square(), identity(), k, 1000), k);
  EXPECT_EQ(bad.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(bad.witnesses.empty());

  auto invalid = example_two();
  invalid.c = 1.0;
  EXPECT_EQ(classify_stability(env, dec, invalid).verdict, Verdict::kInconclusive);
}

TEST(Classify, VerdictInvariantUnderScaling) {
  struct Case {
    LyapunovCandidate v;
    VectorFieldSpec f;
    EnvelopeConstants k;
  };
  const std::vector<Case> cases = {
      {square(), minus_cube(), example_two()},
      {square(), minus_cube(), {1.0, 1.0, 0.0, 2.0, 2.0, 4.0, 1.0}},
      {square(), identity(), {1.0, 1.0, 0.0, 2.0, 2.0, 2.0, 1.0}},
      {LyapunovCandidate::quadratic(2, {2.0, 1.0, 1.0, 2.0}),
       VectorFieldSpec::linear(2, std::vector<double>{-2.0, -1.0, -1.0, -2.0}),
       {1.0, 3.0, 2.0, 2.0, 2.0, 2.0, 1.0}},
  };
  for (const auto& c : cases) {
    const auto base = classify_stability(verify_envelope(c.v, c.k, 2000),
                                         verify_decay(c.v, c.f, c.k, 2000), c.k);
    for (double s : {0.01, 0.5, 3.0, 1000.0}) {
      auto ks = c.k;
      ks.C1 *= s;
      ks.C2 *= s;
      ks.C3 *= s;
      const auto sv = c.v.scaled(s);
      const auto scaled = classify_stability(verify_envelope(sv, ks, 2000),
                                             verify_decay(sv, c.f, ks, 2000), ks);
      EXPECT_EQ(scaled.verdict, base.verdict) << c.v.describe() << " scale " << s;
    }
  }
}

TEST(Delta, DirectSubstitution) {
  auto k = example_two();
  const auto d = delta_for_epsilon(0.1, k, 2.0);
  EXPECT_EQ(d.delta, 0.05);
  EXPECT_EQ(d.K, 2.0);
  k.C2 = 4.0;
  EXPECT_DOUBLE_EQ(delta_for_epsilon(0.1, k, 2.0).delta, 0.025);
}

TEST(Delta, DoublesKUntilBelowEps) {
  // (C1/C2)^{1/b} eps^{a/b} = 100 * 0.5^{0.5} > eps for a small K.
  const EnvelopeConstants k{1e4, 1.0, 0.0, 1.0, 2.0, 2.0, 1.0};
  const auto d = delta_for_epsilon(0.5, k, 1.5);
  EXPECT_LT(d.delta, 0.5);
  EXPECT_GT(d.K, 1.5);
  EXPECT_DOUBLE_EQ(d.delta, 100.0 * std::sqrt(0.5) / d.K);
  for (double eps : {1e-6, 0.01, 0.3, 1.0}) EXPECT_LT(delta_for_epsilon(eps, example_two()).delta, eps);
  EXPECT_THROW(delta_for_epsilon(0.0, example_two()), ConstraintError);
  EXPECT_THROW(delta_for_epsilon(0.1, example_two(), 1.0), ConstraintError);
}

TEST(Certificate, QuadraticLinear) {
  const auto p = LyapunovCandidate::quadratic(2, {1.0, 0.0, 0.0, 1.0});
  const auto f = VectorFieldSpec::linear(2, std::vector<double>{-2.0, -1.0, -1.0, -2.0});
  const auto cert = quadratic_certificate(p, f);
  ASSERT_TRUE(cert.has_value());
  // Q = 2A has eigenvalues 2 and 6.
  EXPECT_NEAR(cert->lambda_min, 2.0, 1e-12);
  EXPECT_TRUE(cert->certifies_decay);

  const auto g = VectorFieldSpec::linear(2, std::vector<double>{1.0, 0.0, 0.0, -1.0});
  EXPECT_FALSE(quadratic_certificate(p, g)->certifies_decay);
  EXPECT_FALSE(quadratic_certificate(square(), minus_cube()).has_value());
  EXPECT_FALSE(quadratic_certificate(LyapunovCandidate::even_power_sum({4}, {1.0}), identity()).has_value());
}

TEST(Report, TextHasVerdictAndQualifier) {
  const auto k = example_two();
  const auto r = classify_stability(verify_envelope(square(), k, 1000),
                                    verify_decay(square(), minus_cube(), k, 1000), k);
  const auto text = r.to_text();
  EXPECT_NE(text.find("verdict: asymptotically-stable\n"), std::string::npos);
  EXPECT_NE(text.find("qualifier: numerical evidence\n"), std::string::npos);
  EXPECT_NE(text.find("delta_for_eps_0.1: 0.05 (K = 2)\n"), std::string::npos)
      << text;
}

}  // namespace
}  // namespace fraclyap::lyapcheck
