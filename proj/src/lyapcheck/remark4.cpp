#include "fraclyap/lyapcheck/remark4.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "fraclyap/errors.hpp"

namespace fraclyap::lyapcheck {

double remark4_function(double t) { return 1.0 / (1.0 + t) + std::sin(t) + 1.0; }

Remark4Report remark4_fixture(double horizon, std::size_t steps) {
  if (!(horizon >= 110.0) || !std::isfinite(horizon)) {
    throw DomainError("remark4_fixture needs a horizon of at least 110");
  }
  if (steps < 1) throw DomainError("remark4_fixture needs at least one step");
  const double dt = horizon / static_cast<double>(steps);
  auto traj = fracops::SampledTrajectory::sample_scalar(dt, steps, remark4_function);

  const auto values = traj.flat();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Remark4Report report{std::move(traj), *lo, *hi, {}, false, false};
  report.positive = report.min_value > 0.0;
  report.non_convergent = report.max_value >= 1.9;

  constexpr double pi = boost::math::constants::pi<double>();
  for (int k = 1;; ++k) {
    const double t = -pi / 2.0 + 2.0 * k * pi;
    if (t > horizon) break;
    report.dips.push_back({k, t, remark4_function(t), 1.0 / (1.0 + t)});
  }
  return report;
}

}  // namespace fraclyap::lyapcheck
