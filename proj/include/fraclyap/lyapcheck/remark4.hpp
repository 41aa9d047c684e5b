#pragma once

#include <cstddef>
#include <vector>

#include "fraclyap/fracops/trajectory.hpp"

namespace fraclyap::lyapcheck {

/// x(t) = 1/(1 + t) + sin t + 1. Positive for all t >= 0, with infimum 0
/// along t_k = -pi/2 + 2 k pi, yet it has no limit: a positive function that
/// does not decay even though its values approach 0 along a subsequence.
double remark4_function(double t);

struct DipSample {
  int k = 0;
  double t = 0.0;
  double value = 0.0;     ///< x(t_k)
  double expected = 0.0;  ///< 1 / (1 + t_k)
};

struct Remark4Report {
  fracops::SampledTrajectory trajectory;
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<DipSample> dips;  ///< every k >= 1 with t_k <= T
  bool positive = false;        ///< min over the grid > 0
  bool non_convergent = false;  ///< max over the grid >= 1.9
};

/// Samples x on [0, T] with N steps. Throws DomainError unless T >= 110
/// (so the dips reach k = 17) and N >= 1.
Remark4Report remark4_fixture(double horizon, std::size_t steps);

}  // namespace fraclyap::lyapcheck
