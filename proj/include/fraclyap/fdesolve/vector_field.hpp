#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace fraclyap::fdesolve {

/// coefficient * prod_i x_i^{exponents[i]}, contributing to f_target.
struct Monomial {
  std::size_t target = 0;
  double coefficient = 0.0;
  std::vector<unsigned> exponents;

  unsigned degree() const noexcept;
};

/// Polynomial vector field f: R^d -> R^d with f(0) = 0.
///
/// Every monomial has total degree >= 1, so f(0) = 0 holds structurally and
/// f is locally Lipschitz. Construction throws DomainError on a degree-0
/// monomial, a mismatched exponent tuple, an out-of-range target or a
/// non-finite coefficient.
class VectorFieldSpec {
 public:
  VectorFieldSpec(std::size_t dim, std::vector<Monomial> terms);

  /// f(x) = M x for a row-major d x d matrix.
  static VectorFieldSpec linear(std::size_t dim, std::span<const double> matrix);
  static VectorFieldSpec zero(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  void evaluate(std::span<const double> x, std::span<double> out) const;
  std::vector<double> operator()(std::span<const double> x) const;

  /// Row-major d x d Jacobian at x.
  std::vector<double> jacobian(std::span<const double> x) const;

  /// A Lipschitz constant of f on the closed ball of radius r: the Frobenius
  /// norm of the entrywise bound |df_i/dx_j| <= sum |c| e_j r^{deg - 1}.
  double lipschitz_bound_on(double r) const;

 private:
  std::size_t dim_;
  std::vector<Monomial> terms_;
};

/// F(x) = f(x) inside the closed ball of radius r1 and f(r1 x / |x|) outside.
/// The radial projection is 1-Lipschitz, so F inherits the constant of f on
/// the ball; it is also globally bounded, so Caputo problems driven by F
/// exist for all time.
class LipschitzExtension {
 public:
  LipschitzExtension(VectorFieldSpec field, double radius);

  std::size_t dim() const noexcept { return field_.dim(); }
  double radius() const noexcept { return radius_; }
  const VectorFieldSpec& inner() const noexcept { return field_; }

  void evaluate(std::span<const double> x, std::span<double> out) const;
  std::vector<double> operator()(std::span<const double> x) const;

  /// Guaranteed global Lipschitz constant: 2 * f.lipschitz_bound_on(radius).
  double lipschitz_bound() const;

 private:
  VectorFieldSpec field_;
  double radius_;
};

LipschitzExtension lipschitz_extension(const VectorFieldSpec& f, double radius);

/// Either a raw polynomial field or its extension.
using Field = std::variant<VectorFieldSpec, LipschitzExtension>;

std::size_t field_dim(const Field& field);
void evaluate_field(const Field& field, std::span<const double> x, std::span<double> out);

}  // namespace fraclyap::fdesolve
