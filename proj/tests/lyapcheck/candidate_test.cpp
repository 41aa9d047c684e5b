#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fraclyap/errors.hpp"
#include "fraclyap/lyapcheck/candidate.hpp"
#include "fraclyap/lyapcheck/sampling.hpp"

namespace fraclyap::lyapcheck {
namespace {

std::vector<LyapunovCandidate> shipped() {
  return {
      LyapunovCandidate::quadratic(1, {1.0}),
      LyapunovCandidate::quadratic(2, {1.0, 0.0, 0.0, 1.0}),
      LyapunovCandidate::quadratic(2, {2.0, 1.0, 1.0, 2.0}),
      LyapunovCandidate::quadratic(3, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0}),
      LyapunovCandidate::even_power_sum({4, 4}, {1.0, 1.0}),
      LyapunovCandidate::even_power_sum({2, 6}, {0.5, 3.0}),
      LyapunovCandidate::linear({1.0, -2.0}),
  };
}

TEST(Candidate, Evaluates) {
  const auto p = LyapunovCandidate::quadratic(2, {2.0, 1.0, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(p.evaluate(std::vector<double>{1.0, -1.0}), 2.0);
  EXPECT_DOUBLE_EQ(p.evaluate(std::vector<double>{1.0, 1.0}), 6.0);
  const auto q = LyapunovCandidate::even_power_sum({4, 2}, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(q.evaluate(std::vector<double>{2.0, 1.0}), 19.0);
  const auto g = q.gradient(std::vector<double>{2.0, 1.0});
  EXPECT_DOUBLE_EQ(g[0], 32.0);
  EXPECT_DOUBLE_EQ(g[1], 6.0);
  for (const auto& v : shipped()) {
    EXPECT_EQ(v.evaluate(std::vector<double>(v.dim(), 0.0)), 0.0) << v.describe();
  }
}

TEST(Candidate, RejectsNonConvexOrMalformed) {
  EXPECT_THROW(LyapunovCandidate::quadratic(2, {1.0, 2.0, 2.0, 1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::quadratic(2, {1.0, 0.5, 0.0, 1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::quadratic(2, {1.0, 0.0, 0.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::even_power_sum({3}, {1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::even_power_sum({0}, {1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::even_power_sum({2}, {-1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::even_power_sum({2, 2}, {1.0}), ConstraintError);
  EXPECT_THROW(LyapunovCandidate::linear({}), ConstraintError);
  // Positive semi-definite but singular is fine.
  EXPECT_NO_THROW(LyapunovCandidate::quadratic(2, {1.0, 1.0, 1.0, 1.0}));
}

TEST(Candidate, DimensionMismatchIsShapeError) {
  const auto v = LyapunovCandidate::quadratic(2, {1.0, 0.0, 0.0, 1.0});
  EXPECT_THROW(v.evaluate(std::vector<double>{1.0}), ShapeError);
}

TEST(Candidate, GradientMatchesFiniteDifferences) {
  for (const auto& v : shipped()) {
    EXPECT_LE(gradient_consistency(v, 1.0, 100), 1e-6) << v.describe();
  }
}

TEST(Candidate, ConvexityGap) {
  // V(y) - V(x) - <grad V(y), y - x> <= 0 for convex V.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (const auto& v : shipped()) {
    const std::size_t d = v.dim();
    double worst = -INFINITY;
    std::vector<double> x(d), y(d);
    for (int k = 0; k < 10000; ++k) {
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = coord(rng);
        y[i] = coord(rng);
      }
      const auto g = v.gradient(y);
      double inner = 0.0;
      for (std::size_t i = 0; i < d; ++i) inner += g[i] * (y[i] - x[i]);
      worst = std::max(worst, v.evaluate(y) - v.evaluate(x) - inner);
    }
    EXPECT_LE(worst, 1e-12) << v.describe();
  }
}

TEST(Candidate, Scaling) {
  const auto v = LyapunovCandidate::even_power_sum({2, 4}, {1.0, 2.0});
  const auto w = v.scaled(3.0);
  const std::vector<double> x{0.3, -0.7};
  EXPECT_DOUBLE_EQ(w.evaluate(x), 3.0 * v.evaluate(x));
  EXPECT_THROW(v.scaled(0.0), ConstraintError);
}

TEST(Sampling, BallPointsAreDeterministicAndInside) {
  const auto a = ball_samples(3, 2.0, 2000, 5);
  const auto b = ball_samples(3, 2.0, 2000, 5);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, ball_samples(3, 2.0, 2000, 6));
  double smallest = INFINITY, largest = 0.0;
  std::vector<int> shells(kRadialShells, 0);
  for (std::size_t k = 0; k < 2000; ++k) {
    const double n = std::sqrt(a[3 * k] * a[3 * k] + a[3 * k + 1] * a[3 * k + 1] + a[3 * k + 2] * a[3 * k + 2]);
    ASSERT_LE(n, 2.0 * (1 + 1e-15));
    smallest = std::min(smallest, n);
    largest = std::max(largest, n);
    const double u = std::log(n / (2.0 * kInnerRadiusFraction)) / std::log(1.0 / kInnerRadiusFraction);
    ++shells[std::min<std::size_t>(kRadialShells - 1, static_cast<std::size_t>(u * kRadialShells))];
  }
  EXPECT_DOUBLE_EQ(smallest, 2.0 * kInnerRadiusFraction);
  EXPECT_DOUBLE_EQ(largest, 2.0);
  for (int c : shells) EXPECT_GE(c, 90);
}

TEST(Sampling, SpherePointsHaveRadius) {
  const auto s = sphere_samples(2, 0.5, 16, 0);
  for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(std::hypot(s[2 * k], s[2 * k + 1]), 0.5, 1e-15);
}

}  // namespace
}  // namespace fraclyap::lyapcheck
