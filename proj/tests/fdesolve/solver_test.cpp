#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "fraclyap/errors.hpp"
#include "fraclyap/fdesolve/solver.hpp"
#include "fraclyap/fracops/operators.hpp"
#include "fraclyap/fracops/special_functions.hpp"

namespace fraclyap::fdesolve {
namespace {

using fracops::FractionalOrder;
using fracops::mittag_leffler;

VectorFieldSpec minus_identity() { return {1, {{0, -1.0, {1}}}}; }
VectorFieldSpec minus_cube() { return {1, {{0, -1.0, {3}}}}; }

// Max relative error against E_a(-t^a) over nodes with t >= 0.1.
double linear_oracle_error(double alpha, std::size_t steps) {
  const auto x = solve_abm({FractionalOrder(alpha), minus_identity(), {1.0}, 10.0, steps});
  double worst = 0.0;
  for (std::size_t k = 0; k < x.nodes(); ++k) {
    const double t = x.time(k);
    if (t < 0.1) continue;
    const double exact = mittag_leffler(alpha, -std::pow(t, alpha));
    worst = std::max(worst, std::abs(x(k) - exact) / exact);
  }
  return worst;
}

TEST(SolveAbm, ZeroFieldKeepsInitialState) {
  const auto x = solve_abm({FractionalOrder(0.6), VectorFieldSpec::zero(2), {0.25, -3.0}, 5.0, 64});
  for (std::size_t k = 0; k < x.nodes(); ++k) {
    ASSERT_EQ(x(k, 0), 0.25);
    ASSERT_EQ(x(k, 1), -3.0);
  }
}

TEST(SolveAbm, MatchesMittagLefflerOracle) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    SCOPED_TRACE(alpha);
    EXPECT_LE(linear_oracle_error(alpha, 4096), 1e-3);
  }
}

TEST(SolveAbm, ObservedOrderInBracket) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double e1 = linear_oracle_error(alpha, 1024);
    const double e2 = linear_oracle_error(alpha, 2048);
    const double e4 = linear_oracle_error(alpha, 4096);
    const double order = std::log2(e1 / e4) / 2.0;
    RecordProperty("order_alpha_" + std::to_string(alpha), std::to_string(order));
    SCOPED_TRACE(alpha);
    EXPECT_LT(e2, e1);
    EXPECT_LT(e4, e2);
    EXPECT_GE(order, 1.0);
    EXPECT_LE(order, 2.0);
  }
}

TEST(SolveAbm, InitialNodeIsExact) {
  const auto x = solve_abm({FractionalOrder(0.8), minus_cube(), {0.6}, 10.0, 128});
  EXPECT_EQ(x(0), 0.6);
  EXPECT_EQ(x.nodes(), 129u);
  EXPECT_DOUBLE_EQ(x.dt(), 10.0 / 128);
}

TEST(SolveAbm, ExampleTwoEntersTenthBand) {
  for (double x0 : {1.0, 0.6, -0.8}) {
    const auto x = solve_abm({FractionalOrder(0.8), lipschitz_extension(minus_cube(), 1.0), {x0},
                              1000.0, 16384});
    EXPECT_LE(std::abs(x(x.steps())), 0.1) << "x0 = " << x0;
  }
}

TEST(SolveAbm, CaputoOfSolutionMatchesField) {
  // D^a x recomputed from the samples should reproduce f(x) ever better.
  const FractionalOrder alpha(0.6);
  const VectorFieldSpec f(2, {{0, -1.0, {1, 0}}, {0, 0.5, {0, 1}}, {1, -1.0, {0, 3}}, {1, -0.5, {1, 0}}});
  double previous = INFINITY;
  for (std::size_t steps : {256, 512, 1024, 2048}) {
    const auto x = solve_abm({alpha, f, {0.8, -0.5}, 4.0, steps});
    const auto dx = fracops::caputo_derivative(x, alpha);
    double worst = 0.0;
    for (std::size_t k = 1; k < x.nodes(); ++k) {
      const auto fx = f(x.at(k));
      for (std::size_t i = 0; i < 2; ++i) worst = std::max(worst, std::abs(dx(k, i) - fx[i]));
    }
    EXPECT_LT(worst, previous) << "steps = " << steps;
    previous = worst;
  }
  EXPECT_LE(previous, 1e-2);
}

TEST(SolveAbm, BitIdenticalRepeats) {
  const IVProblem problem{FractionalOrder(0.7), lipschitz_extension(minus_cube(), 1.0), {0.9}, 50.0, 2048};
  const auto a = solve_abm(problem);
  const auto b = solve_abm(problem);
  ASSERT_EQ(a.flat().size(), b.flat().size());
  EXPECT_EQ(std::memcmp(a.flat().data(), b.flat().data(), a.flat().size() * sizeof(double)), 0);
}

TEST(SolveAbm, DetectsBlowUp) {
  const VectorFieldSpec square(1, {{0, 1.0, {2}}});
  try {
    solve_abm({FractionalOrder(0.5), square, {2.0}, 10.0, 1000});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_LT(e.last_valid_node(), 1000u);
  }
}

TEST(SolveAbm, ExtensionPreventsBlowUp) {
  const VectorFieldSpec square(1, {{0, 1.0, {2}}});
  EXPECT_NO_THROW(solve_abm({FractionalOrder(0.5), lipschitz_extension(square, 1.0), {2.0}, 10.0, 1000}));
}

TEST(SolveAbm, RejectsBadProblems) {
  EXPECT_THROW(solve_abm({FractionalOrder(0.5), minus_identity(), {1.0, 2.0}, 1.0, 10}), DomainError);
  EXPECT_THROW(solve_abm({FractionalOrder(0.5), minus_identity(), {1.0}, 0.0, 10}), DomainError);
  EXPECT_THROW(solve_abm({FractionalOrder(0.5), minus_identity(), {1.0}, 1.0, 0}), DomainError);
  EXPECT_THROW(solve_abm({FractionalOrder(0.5), minus_identity(), {NAN}, 1.0, 10}), DomainError);
}

TEST(ScalarComparison, ZeroRateIsConstant) {
  const auto sol = solve_scalar_comparison(0.0, 2.0, 0.7, FractionalOrder(0.4), 10.0, 100);
  for (std::size_t k = 0; k < sol.trajectory.nodes(); ++k) ASSERT_EQ(sol.trajectory(k), 0.7);
  EXPECT_EQ(sol.clamp_events, 0u);
}

TEST(ScalarComparison, LinearCaseMatchesMittagLeffler) {
  const auto sol = solve_scalar_comparison(-1.0, 1.0, 1.0, FractionalOrder(0.5), 10.0, 4096);
  const auto& y = sol.trajectory;
  double worst = 0.0;
  for (std::size_t k = 0; k < y.nodes(); ++k) {
    const double exact = mittag_leffler(0.5, -std::sqrt(y.time(k)));
    worst = std::max(worst, std::abs(y(k) - exact) / exact);
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(ScalarComparison, QuadraticDecayAgainstFineReference) {
  const FractionalOrder alpha(0.8);
  const auto coarse = solve_scalar_comparison(-2.0, 2.0, 1.0, alpha, 100.0, 8192);
  const auto fine = solve_scalar_comparison(-2.0, 2.0, 1.0, alpha, 100.0, 65536);
  const auto& y = coarse.trajectory;
  for (std::size_t k = 1; k < y.nodes(); ++k) ASSERT_LE(y(k), y(k - 1)) << "node " << k;
  EXPECT_LT(y(y.steps()), 0.5);
  EXPECT_EQ(coarse.clamp_events, 0u);
  EXPECT_EQ(fine.clamp_events, 0u);
  // Shared nodes agree with the reference to well within the qualitative claim.
  double worst = 0.0;
  for (std::size_t k = 0; k < y.nodes(); ++k) {
    worst = std::max(worst, std::abs(y(k) - fine.trajectory(8 * k)));
  }
  EXPECT_LE(worst, 1e-3);
  EXPECT_LT(fine.trajectory(fine.trajectory.steps()), 0.5);
}

TEST(ScalarComparison, RejectsOutsideRegime) {
  EXPECT_THROW(solve_scalar_comparison(1.0, 2.0, 1.0, FractionalOrder(0.5), 1.0, 10), DomainError);
  EXPECT_THROW(solve_scalar_comparison(-1.0, 2.0, 0.0, FractionalOrder(0.5), 1.0, 10), DomainError);
  EXPECT_THROW(solve_scalar_comparison(-1.0, 0.5, 1.0, FractionalOrder(0.5), 1.0, 10), DomainError);
}

}  // namespace
}  // namespace fraclyap::fdesolve
