#include "fraclyap/fracops/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fraclyap/errors.hpp"

namespace fraclyap::fracops {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765307,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // Gamma(x) for x >= 0.5.
  const double xm1 = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (xm1 + static_cast<double>(i));
  }
  const double t = xm1 + kLanczosG + 0.5;
  // t^(xm1 + 0.5) is split in two halves so it does not overflow before exp(-t)
  // brings it back down.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * half_power * (half_power * std::exp(-t)) * series;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double s = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - s) + v;
    } else {
      carry += (v - s) + sum;
    }
    sum = s;
  }
  double value() const { return sum + carry; }
};

constexpr int kMaxSeriesTerms = 1'000'000;

double mittag_leffler_series(double alpha, double z) {
  const double log_abs_z = std::log(std::abs(z));
  CompensatedSum sum;
  sum.add(1.0);
  double previous_log_term = 0.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term = kd * log_abs_z - std::lgamma(alpha * kd + 1.0);
    const double magnitude = std::exp(log_term);
    if (!std::isfinite(magnitude)) return std::numeric_limits<double>::infinity();
    sum.add((z < 0.0 && (k % 2 == 1)) ? -magnitude : magnitude);
    const bool past_peak = log_term < previous_log_term;
    if (past_peak && magnitude <= 1e-17 * std::abs(sum.value())) break;
    previous_log_term = log_term;
  }
  return sum.value();
}

double mittag_leffler_negative_integral(double alpha, double x) {
  const double theta = alpha * std::numbers::pi;
  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double inv_alpha = 1.0 / alpha;

  auto integrand = [&](double u) {
    const double denom = u * u + 2.0 * x * u * cos_theta + x * x;
    return std::exp(-std::pow(u, inv_alpha)) / denom;
  };

  // exp(-u^{1/alpha}) < e^-800 beyond this point.
  const double upper = std::pow(800.0, alpha);

  std::vector<double> breaks = {0.0, std::min(1.0, upper), upper};
  if (cos_theta < 0.0) {
    const double peak = -x * cos_theta;
    const double width = x * sin_theta;
    for (double b : {peak - width, peak, peak + width}) {
      if (b > 0.0 && b < upper) breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    integral += Quadrature::integrate(integrand, breaks[i], breaks[i + 1], 12, 1e-13);
  }
  return sin_theta * x / theta * integral;
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError("gamma_fn: argument must be positive and finite");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

double mittag_leffler(double alpha, double z) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha <= 1.0)) {
    throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
  }
  if (!std::isfinite(z)) throw DomainError("mittag_leffler: argument must be finite");
  if (z > 30.0) {
    throw AccuracyError("mittag_leffler: accuracy is only guaranteed for z <= 0 or |z| <= 30");
  }
  if (z == 0.0) return 1.0;
  if (alpha == 1.0) return std::exp(z);
  if (z > 0.0) {
    // The sum is dominated by exp(z^{1/alpha}) / alpha.
    if (std::pow(z, 1.0 / alpha) - std::log(alpha) > 709.0) {
      return std::numeric_limits<double>::infinity();
    }
    return mittag_leffler_series(alpha, z);
  }
  const double value = z >= -1.0 ? mittag_leffler_series(alpha, z)
                                 : mittag_leffler_negative_integral(alpha, -z);
  return std::clamp(value, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace fraclyap::fracops
