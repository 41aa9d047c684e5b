#pragma once

#include "fraclyap/fracops/fractional_order.hpp"

namespace fraclyap::fracops {

/// Gamma function on (0, inf). Lanczos approximation (g = 7, 9 terms) with
/// the reflection formula below 1/2; relative error below 1e-12 on (0, 50].
/// Returns +inf once the result overflows a double (x > ~171.6).
/// Throws DomainError for x <= 0 or non-finite x.
double gamma_fn(double x);

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1)
/// for real z and alpha in (0, 1].
///
/// Accuracy (relative 1e-8) is guaranteed for z <= 0 and for |z| <= 30.
/// On the negative axis the value lies in (0, 1] when alpha < 1.
///
/// Method:
///   - alpha == 1: exp(z).
///   - |z| <= 1, or 0 < z <= 30: power series summed in log space until the
///     terms have passed their peak and dropped below round-off.
///   - z < -1: the spectral representation
///       E_alpha(-x) = sin(a pi) x / (a pi) * int_0^inf exp(-u^{1/a}) /
///                     (u^2 + 2 x u cos(a pi) + x^2) du,
///     whose integrand is positive, so no cancellation occurs. Integrated by
///     adaptive Gauss-Kronrod with break points at the denominator's peak.
///
/// Throws DomainError if alpha is outside (0, 1] or z is not finite, and
/// AccuracyError for z > 30. Positive arguments whose result overflows a
/// double return +inf.
double mittag_leffler(double alpha, double z);

inline double mittag_leffler(FractionalOrder alpha, double z) {
  return mittag_leffler(alpha.value(), z);
}

}  // namespace fraclyap::fracops
