#include "fraclyap/fracops/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fraclyap/errors.hpp"
#include "fraclyap/fracops/special_functions.hpp"
#include "fraclyap/fracops/weights.hpp"

namespace fraclyap::fracops {
namespace {

// Exponents removed from the quotient (v(t) - v(0)) / t^alpha: alpha (Caputo
// solutions), 1 - alpha (smooth data) and 1 (x0 + I^alpha psi with smooth psi),
// topped up with the next values of (j - 1) alpha + k when two coincide.
std::array<double, 3> quotient_exponents(double alpha) {
  std::vector<double> candidates = {alpha, 1.0 - alpha, 1.0};
  std::vector<double> rest;
  for (int j = 0; j <= 4; ++j) {
    for (int k = 0; k <= 3; ++k) {
      const double e = (j - 1) * alpha + k;
      if (e > 1e-9) rest.push_back(e);
    }
  }
  std::sort(rest.begin(), rest.end());
  candidates.insert(candidates.end(), rest.begin(), rest.end());

  std::vector<double> chosen;
  for (double e : candidates) {
    const bool duplicate = std::any_of(chosen.begin(), chosen.end(),
                                       [e](double c) { return std::abs(c - e) < 1e-9; });
    if (!duplicate) chosen.push_back(e);
    if (chosen.size() == 3) break;
  }
  std::sort(chosen.begin(), chosen.end());
  return {chosen[0], chosen[1], chosen[2]};
}

struct Extrapolation {
  double value = 0.0;
  double last_correction = 0.0;
  double scale = 0.0;
};

// Richardson extrapolation of one component on nodes first, 2 first, 4 first, ...
Extrapolation richardson(const SampledTrajectory& v, std::size_t component, double alpha,
                         const std::array<double, 3>& exponents, std::size_t first,
                         std::size_t levels) {
  std::array<std::array<double, 4>, 4> table{};
  Extrapolation out;
  for (std::size_t r = 0; r < levels; ++r) {
    const std::size_t node = first << r;
    table[r][0] = (v(node, component) - v(0, component)) / std::pow(v.time(node), alpha);
    out.scale = std::max(out.scale, std::abs(table[r][0]));
  }
  for (std::size_t c = 1; c < levels; ++c) {
    const double factor = std::pow(2.0, exponents[c - 1]);
    for (std::size_t r = 0; r + c < levels; ++r) {
      table[r][c] = (factor * table[r][c - 1] - table[r + 1][c - 1]) / (factor - 1.0);
    }
  }
  out.value = table[0][levels - 1];
  out.last_correction = std::abs(table[0][levels - 1] - table[0][levels - 2]);
  return out;
}

// levels = number of nodes used (2..4). When node 16 exists, the same
// extrapolation shifted one doubling to the right (nodes 2..16) measures the
// spread; the result is unreliable if that spread exceeds ten times the last
// correction of the main table.
GammaLimit extrapolate(const SampledTrajectory& v, double alpha, std::size_t levels) {
  const std::size_t d = v.dim();
  const auto exponents = quotient_exponents(alpha);
  const bool has_shifted = levels == 4 && v.steps() >= 16;
  GammaLimit out;
  out.gamma.assign(d, 0.0);
  out.caputo_at_zero.assign(d, 0.0);

  for (std::size_t i = 0; i < d; ++i) {
    const auto main = richardson(v, i, alpha, exponents, 1, levels);
    out.gamma[i] = main.value;
    double spread = main.last_correction;
    if (has_shifted) {
      const auto shifted = richardson(v, i, alpha, exponents, 2, levels);
      spread = std::abs(shifted.value - main.value);
      if (spread > 10.0 * main.last_correction + 1e-10 * main.scale) out.reliable = false;
    }
    out.stderr_estimate = std::max(out.stderr_estimate, spread);
  }
  const double g = gamma_fn(alpha + 1.0);
  for (std::size_t i = 0; i < d; ++i) out.caputo_at_zero[i] = g * out.gamma[i];
  return out;
}

}  // namespace

SampledTrajectory rl_integral(const SampledTrajectory& x, FractionalOrder order) {
  const double alpha = order.value();
  const std::size_t n_steps = x.steps();
  const std::size_t d = x.dim();
  const auto interior = ProductWeights::trapezoid_interior(alpha, n_steps);
  const double scale = std::pow(x.dt(), alpha) / gamma_fn(alpha + 2.0);

  std::vector<double> out((n_steps + 1) * d, 0.0);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double first = ProductWeights::trapezoid_first(alpha, n);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = first * x(0, i) + x(n, i);
      for (std::size_t j = 1; j < n; ++j) acc += interior[n - j] * x(j, i);
      out[n * d + i] = scale * acc;
    }
  }
  return {x.dt(), d, std::move(out)};
}

GammaLimit gamma_limit(const SampledTrajectory& v, FractionalOrder alpha) {
  if (v.steps() < 8) throw DomainError("gamma_limit: needs at least 8 steps");
  return extrapolate(v, alpha.value(), 4);
}

SampledTrajectory caputo_derivative(const SampledTrajectory& v, FractionalOrder order) {
  if (v.steps() < 4) throw DomainError("caputo_derivative: needs at least 4 steps");
  const double alpha = order.value();
  const std::size_t n_steps = v.steps();
  const std::size_t d = v.dim();
  const double h = v.dt();

  const GammaLimit limit = extrapolate(v, alpha, v.steps() >= 8 ? 4 : 3);

  // q[m] = m^{1-a} - (m-1)^{1-a};  p[m] = (m-1)^{-a} - m^{-a} for m >= 2.
  const auto q = ProductWeights::power_difference(1.0 - alpha, n_steps);
  auto p = ProductWeights::power_difference(-alpha, n_steps);
  for (double& w : p) w = -w;

  const double ratio = alpha / (1.0 - alpha);
  const double scale = std::pow(h, -alpha) / gamma_fn(1.0 - alpha);

  std::vector<double> out((n_steps + 1) * d, 0.0);
  std::vector<double> w(n_steps + 1);
  std::vector<double> diff(n_steps);
  for (std::size_t i = 0; i < d; ++i) {
    const double gamma = limit.gamma[i];
    // Remainder after removing v(0) + gamma t^a.
    for (std::size_t k = 0; k <= n_steps; ++k) {
      w[k] = k == 0 ? 0.0 : v(k, i) - v(0, i) - gamma * std::pow(v.time(k), alpha);
    }
    for (std::size_t j = 0; j < n_steps; ++j) diff[j] = w[j + 1] - w[j];

    out[i] = limit.caputo_at_zero[i];
    for (std::size_t n = 1; n <= n_steps; ++n) {
      const double wn = w[n];
      double acc = wn * std::pow(static_cast<double>(n), -alpha);
      acc += ratio * diff[n - 1];  // diagonal cell, q[1] = 1
      for (std::size_t m = 2; m <= n; ++m) {
        const std::size_t j = n - m;
        const double md = static_cast<double>(m);
        acc += (wn - w[j] - md * diff[j]) * p[m] + ratio * diff[j] * q[m];
      }
      out[n * d + i] = limit.caputo_at_zero[i] + scale * acc;
    }
  }
  return {h, d, std::move(out)};
}

}  // namespace fraclyap::fracops
