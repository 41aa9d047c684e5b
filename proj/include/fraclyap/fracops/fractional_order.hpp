#pragma once

#include <cmath>
#include <string>

#include "fraclyap/errors.hpp"

namespace fraclyap::fracops {

/// Order of a fractional operator, strictly inside (0, 1).
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < 1.0)) {
      throw DomainError("fractional order must lie strictly inside (0, 1), got " +
                        std::to_string(alpha));
    }
  }

  double value() const noexcept { return alpha_; }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double alpha_;
};

}  // namespace fraclyap::fracops
