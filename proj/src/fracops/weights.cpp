#include "fraclyap/fracops/weights.hpp"

#include <cmath>

namespace fraclyap::fracops {
namespace {

// (m+1)^p - 2 m^p + (m-1)^p
double second_difference(double p, double m) {
  if (m < 16.0) {
    const double x = 1.0 / m;
    return std::pow(m, p) *
           (std::expm1(p * std::log1p(x)) + std::expm1(p * std::log1p(-x)));
  }
  // m^p * sum_{k even >= 2} 2 binom(p, k) m^-k
  const double inv_m2 = 1.0 / (m * m);
  double coefficient = p * (p - 1.0) / 2.0;  // binom(p, 2)
  double scale = inv_m2;
  double sum = 0.0;
  for (int k = 2; k < 40; k += 2) {
    const double term = 2.0 * coefficient * scale;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    coefficient *= (p - k) * (p - k - 1.0) / ((k + 1.0) * (k + 2.0));
    scale *= inv_m2;
  }
  return std::pow(m, p) * sum;
}

}  // namespace

std::vector<double> ProductWeights::power_difference(double power, std::size_t max_lag) {
  std::vector<double> w(max_lag + 1, 0.0);
  if (max_lag >= 1) w[1] = 1.0;
  for (std::size_t m = 2; m <= max_lag; ++m) {
    const double md = static_cast<double>(m);
    w[m] = -std::pow(md, power) * std::expm1(power * std::log1p(-1.0 / md));
  }
  return w;
}

std::vector<double> ProductWeights::rectangle(double alpha, std::size_t max_lag) {
  return power_difference(alpha, max_lag);
}

std::vector<double> ProductWeights::trapezoid_interior(double alpha, std::size_t max_lag) {
  std::vector<double> w(max_lag + 1, 0.0);
  const double p = alpha + 1.0;
  for (std::size_t m = 1; m <= max_lag; ++m) {
    w[m] = m == 1 ? std::pow(2.0, p) - 2.0 : second_difference(p, static_cast<double>(m));
  }
  return w;
}

double ProductWeights::trapezoid_first(double alpha, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return alpha;
  // n^a [ n ((1 - 1/n)^{a+1} - 1) + 1 + a ]
  const double nd = static_cast<double>(n);
  const double p = alpha + 1.0;
  return std::pow(nd, alpha) * (nd * std::expm1(p * std::log1p(-1.0 / nd)) + p);
}

}  // namespace fraclyap::fracops
