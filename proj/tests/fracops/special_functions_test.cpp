#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "fraclyap/errors.hpp"
#include "fraclyap/fracops/special_functions.hpp"

namespace fraclyap::fracops {
namespace {

using Wide = boost::multiprecision::cpp_dec_float_50;

// Gamma(x) from its defining integral, independent of the Lanczos route.
double gamma_by_quadrature(double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(
      [x](double t) { return t > 0.0 ? std::exp((x - 1.0) * std::log(t) - t) : 0.0; });
}

// Power series of E_alpha(z) in 50-digit arithmetic.
double mittag_leffler_wide(double alpha, double z) {
  Wide sum = 0;
  Wide zw = z;
  Wide power = 1;
  for (int k = 0; k < 4000; ++k) {
    const Wide term = power / boost::math::tgamma(Wide(alpha) * k + 1);
    sum += term;
    if (k > 10 && abs(term) < Wide("1e-40")) break;
    power *= zw;
  }
  return static_cast<double>(sum);
}

TEST(GammaFn, TrivialValues) {
  EXPECT_NEAR(gamma_fn(1.0), 1.0, 1e-14);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055160, 1e-15);
}

TEST(GammaFn, MatchesDefiningIntegral) {
  const double oracle = gamma_by_quadrature(1.8);
  EXPECT_NEAR(oracle, 0.9313837710, 1e-10);
  EXPECT_NEAR(gamma_fn(1.8) / oracle, 1.0, 1e-12);
  for (double x : {0.3, 0.7, 1.2, 2.5, 7.25}) {
    EXPECT_NEAR(gamma_fn(x) / gamma_by_quadrature(x), 1.0, 1e-11) << "x = " << x;
  }
}

TEST(GammaFn, RelativeErrorOnRange) {
  double worst = 0.0;
  for (int i = 1; i <= 5000; ++i) {
    const double x = 50.0 * i / 5000.0;
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  for (double x : {1e-8, 1e-4, 0.01, 0.49999, 0.5, 0.50001}) {
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(GammaFn, ReflectionSpotCheck) {
  for (double x : {0.1, 0.3, 0.7}) {
    const double product = gamma_fn(x) * gamma_fn(1.0 - x) * std::sin(std::numbers::pi * x) /
                           std::numbers::pi;
    EXPECT_NEAR(product, 1.0, 1e-10) << "x = " << x;
  }
}

TEST(GammaFn, RejectsNonPositive) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-1.5), DomainError);
  EXPECT_THROW(gamma_fn(std::nan("")), DomainError);
  EXPECT_THROW(gamma_fn(INFINITY), DomainError);
}

TEST(MittagLeffler, TrivialValues) {
  EXPECT_NEAR(mittag_leffler(1.0, 1.0), 2.718281828459045, 1e-15);
  EXPECT_EQ(mittag_leffler(0.8, 0.0), 1.0);
}

TEST(MittagLeffler, HalfOrderMatchesErfcIdentity) {
  // E_{1/2}(z) = exp(z^2) erfc(-z)
  EXPECT_NEAR(mittag_leffler(0.5, -1.0), 0.4275836, 1e-7);
  for (double z = -25.0; z <= 5.0; z += 0.125) {
    const double oracle = std::exp(z * z) * std::erfc(-z);
    EXPECT_NEAR(mittag_leffler(0.5, z) / oracle, 1.0, 1e-8) << "z = " << z;
  }
}

TEST(MittagLeffler, MatchesWidePrecisionSeries) {
  struct Case {
    double alpha;
    double z_min;
  };
  for (const Case c : {Case{0.3, -3.0}, Case{0.6, -8.0}, Case{0.8, -20.0}, Case{0.95, -30.0}}) {
    for (double z = c.z_min; z <= 3.0; z += 0.25) {
      const double oracle = mittag_leffler_wide(c.alpha, z);
      EXPECT_NEAR(mittag_leffler(c.alpha, z) / oracle, 1.0, 1e-8)
          << "alpha = " << c.alpha << ", z = " << z;
    }
  }
}

TEST(MittagLeffler, AgreesWithExponentialNearOrderOne) {
  for (double z : {-30.0, -12.0, -2.0, -0.5}) {
    EXPECT_NEAR(mittag_leffler(0.9999, z), std::exp(z), 1e-3 * std::exp(z) + 1e-4);
  }
}

TEST(MittagLeffler, MonotoneOnNegativeAxis) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    double previous = 2.0;
    for (int i = 0; i <= 40; ++i) {
      const double value = mittag_leffler(alpha, -0.5 * i);
      EXPECT_GT(value, 0.0);
      EXPECT_LE(value, 1.0);
      EXPECT_LT(value, previous) << "alpha = " << alpha << ", s = " << 0.5 * i;
      previous = value;
    }
  }
}

TEST(MittagLeffler, LargeNegativeArgumentsFollowAlgebraicTail) {
  // E_alpha(-x) ~ 1 / (x Gamma(1 - alpha)) as x -> inf
  for (double alpha : {0.3, 0.7}) {
    const double x = 1e6;
    EXPECT_NEAR(mittag_leffler(alpha, -x) * x * std::tgamma(1.0 - alpha), 1.0, 1e-4);
  }
}

TEST(MittagLeffler, ErrorsAreDistinguished) {
  EXPECT_THROW(mittag_leffler(0.0, -1.0), DomainError);
  EXPECT_THROW(mittag_leffler(1.2, -1.0), DomainError);
  EXPECT_THROW(mittag_leffler(0.5, std::nan("")), DomainError);
  EXPECT_THROW(mittag_leffler(0.5, 31.0), AccuracyError);
  EXPECT_NO_THROW(mittag_leffler(0.5, -31.0));
}

}  // namespace
}  // namespace fraclyap::fracops
