#include "fraclyap/fdesolve/vector_field.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fraclyap/errors.hpp"

namespace fraclyap::fdesolve {
namespace {

double int_power(double x, unsigned e) {
  double result = 1.0;
  for (unsigned i = 0; i < e; ++i) result *= x;
  return result;
}

double monomial_value(const Monomial& m, std::span<const double> x) {
  double v = m.coefficient;
  for (std::size_t i = 0; i < x.size(); ++i) v *= int_power(x[i], m.exponents[i]);
  return v;
}

double norm(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

}  // namespace

unsigned Monomial::degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

VectorFieldSpec::VectorFieldSpec(std::size_t dim, std::vector<Monomial> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim == 0) throw DomainError("vector field dimension must be at least 1");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Monomial& m = terms_[k];
    const std::string where = "term " + std::to_string(k) + ": ";
    if (m.exponents.size() != dim) {
      throw DomainError(where + "exponent tuple has " + std::to_string(m.exponents.size()) +
                        " entries, expected " + std::to_string(dim));
    }
    if (m.target >= dim) throw DomainError(where + "target coordinate out of range");
    if (!std::isfinite(m.coefficient)) throw DomainError(where + "coefficient is not finite");
    if (m.degree() == 0) {
      throw DomainError(where + "degree-0 monomial would violate f(0) = 0");
    }
  }
}

VectorFieldSpec VectorFieldSpec::linear(std::size_t dim, std::span<const double> matrix) {
  if (matrix.size() != dim * dim) throw DomainError("linear field needs a d x d matrix");
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double a = matrix[i * dim + j];
      if (a == 0.0) continue;
      Monomial m{i, a, std::vector<unsigned>(dim, 0)};
      m.exponents[j] = 1;
      terms.push_back(std::move(m));
    }
  }
  return {dim, std::move(terms)};
}

VectorFieldSpec VectorFieldSpec::zero(std::size_t dim) { return {dim, {}}; }

void VectorFieldSpec::evaluate(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const Monomial& m : terms_) out[m.target] += monomial_value(m, x);
}

std::vector<double> VectorFieldSpec::operator()(std::span<const double> x) const {
  std::vector<double> out(dim_);
  evaluate(x, out);
  return out;
}

std::vector<double> VectorFieldSpec::jacobian(std::span<const double> x) const {
  std::vector<double> jac(dim_ * dim_, 0.0);
  for (const Monomial& m : terms_) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const unsigned e = m.exponents[j];
      if (e == 0) continue;
      double v = m.coefficient * e * int_power(x[j], e - 1);
      for (std::size_t i = 0; i < dim_; ++i) {
        if (i != j) v *= int_power(x[i], m.exponents[i]);
      }
      jac[m.target * dim_ + j] += v;
    }
  }
  return jac;
}

double VectorFieldSpec::lipschitz_bound_on(double r) const {
  if (!(r > 0.0)) throw DomainError("lipschitz_bound_on: radius must be positive");
  std::vector<double> bound(dim_ * dim_, 0.0);
  for (const Monomial& m : terms_) {
    const double scale = std::abs(m.coefficient) * int_power(r, m.degree() - 1);
    for (std::size_t j = 0; j < dim_; ++j) {
      bound[m.target * dim_ + j] += scale * m.exponents[j];
    }
  }
  return norm(bound);
}

LipschitzExtension::LipschitzExtension(VectorFieldSpec field, double radius)
    : field_(std::move(field)), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("lipschitz_extension: radius must be positive and finite");
  }
}

void LipschitzExtension::evaluate(std::span<const double> x, std::span<double> out) const {
  const double r = norm(x);
  if (r <= radius_) {
    field_.evaluate(x, out);
    return;
  }
  std::vector<double> projected(x.begin(), x.end());
  for (double& v : projected) v *= radius_ / r;
  field_.evaluate(projected, out);
}

std::vector<double> LipschitzExtension::operator()(std::span<const double> x) const {
  std::vector<double> out(dim());
  evaluate(x, out);
  return out;
}

double LipschitzExtension::lipschitz_bound() const {
  return 2.0 * field_.lipschitz_bound_on(radius_);
}

LipschitzExtension lipschitz_extension(const VectorFieldSpec& f, double radius) {
  return {f, radius};
}

std::size_t field_dim(const Field& field) {
  return std::visit([](const auto& f) { return f.dim(); }, field);
}

void evaluate_field(const Field& field, std::span<const double> x, std::span<double> out) {
  std::visit([&](const auto& f) { f.evaluate(x, out); }, field);
}

}  // namespace fraclyap::fdesolve
