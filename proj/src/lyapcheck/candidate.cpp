#include "fraclyap/lyapcheck/candidate.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

#include <Eigen/Eigenvalues>

#include "fraclyap/errors.hpp"
#include "fraclyap/format.hpp"
#include "fraclyap/lyapcheck/sampling.hpp"

namespace fraclyap::lyapcheck {
namespace {

double int_power(double x, unsigned e) {
  double result = 1.0;
  for (unsigned i = 0; i < e; ++i) result *= x;
  return result;
}

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ConstraintError(std::string(what) + " must be finite");
  }
}

}  // namespace

LyapunovCandidate::LyapunovCandidate(Kind kind, std::size_t dim, std::vector<double> coefficients,
                                     std::vector<unsigned> exponents)
    : kind_(kind), dim_(dim), coefficients_(std::move(coefficients)),
      exponents_(std::move(exponents)) {}

LyapunovCandidate LyapunovCandidate::quadratic(std::size_t dim, std::vector<double> matrix) {
  if (dim == 0) throw ConstraintError("quadratic form needs dimension >= 1");
  if (matrix.size() != dim * dim) {
    throw ConstraintError("quadratic form needs " + std::to_string(dim * dim) + " matrix entries, got " +
                          std::to_string(matrix.size()));
  }
  require_finite(matrix, "quadratic form entries");
  double scale = 0.0;
  for (double v : matrix) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (std::abs(matrix[i * dim + j] - matrix[j * dim + i]) > 1e-12 * scale) {
        throw ConstraintError("quadratic form matrix is not symmetric");
      }
    }
  }
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> p(
      matrix.data(), dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues().minCoeff();
  if (smallest < -1e-12 * scale) {
    std::ostringstream msg;
    msg << "quadratic form matrix is not positive semi-definite (smallest eigenvalue " << smallest
        << ")";
    throw ConstraintError(msg.str());
  }
  return {Kind::kQuadratic, dim, std::move(matrix), {}};
}

LyapunovCandidate LyapunovCandidate::even_power_sum(std::vector<unsigned> exponents,
                                                    std::vector<double> weights) {
  if (exponents.empty()) throw ConstraintError("even-power sum needs at least one coordinate");
  if (exponents.size() != weights.size()) {
    throw ConstraintError("even-power sum needs one weight per exponent");
  }
  for (unsigned e : exponents) {
    if (e < 2 || e % 2 != 0) throw ConstraintError("even-power sum exponents must be even and >= 2");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConstraintError("even-power sum weights must be positive");
  }
  const std::size_t dim = exponents.size();
  return {Kind::kEvenPowerSum, dim, std::move(weights), std::move(exponents)};
}

LyapunovCandidate LyapunovCandidate::linear(std::vector<double> weights) {
  if (weights.empty()) throw ConstraintError("linear candidate needs dimension >= 1");
  require_finite(weights, "linear weights");
  const std::size_t dim = weights.size();
  return {Kind::kLinear, dim, std::move(weights), {}};
}

double LyapunovCandidate::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) throw ShapeError("candidate evaluated at a point of the wrong dimension");
  double v = 0.0;
  switch (kind_) {
    case Kind::kQuadratic:
      for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) row += coefficients_[i * dim_ + j] * x[j];
        v += x[i] * row;
      }
      break;
    case Kind::kEvenPowerSum:
      for (std::size_t i = 0; i < dim_; ++i) v += coefficients_[i] * int_power(x[i], exponents_[i]);
      break;
    case Kind::kLinear:
      for (std::size_t i = 0; i < dim_; ++i) v += coefficients_[i] * x[i];
      break;
  }
  return v;
}

void LyapunovCandidate::gradient(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim_ || out.size() != dim_) {
    throw ShapeError("candidate gradient at a point of the wrong dimension");
  }
  switch (kind_) {
    case Kind::kQuadratic:
      // (P + P^T) x, and P is symmetric.
      for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
          row += (coefficients_[i * dim_ + j] + coefficients_[j * dim_ + i]) * x[j];
        }
        out[i] = row;
      }
      break;
    case Kind::kEvenPowerSum:
      for (std::size_t i = 0; i < dim_; ++i) {
        out[i] = coefficients_[i] * exponents_[i] * int_power(x[i], exponents_[i] - 1);
      }
      break;
    case Kind::kLinear:
      std::copy(coefficients_.begin(), coefficients_.end(), out.begin());
      break;
  }
}

std::vector<double> LyapunovCandidate::gradient(std::span<const double> x) const {
  std::vector<double> out(dim_);
  gradient(x, out);
  return out;
}

LyapunovCandidate LyapunovCandidate::scaled(double k) const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConstraintError("candidate scale must be positive");
  auto copy = *this;
  for (double& c : copy.coefficients_) c *= k;
  return copy;
}

std::string LyapunovCandidate::describe() const {
  std::ostringstream out;
  auto list = [&out](const auto& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << (i ? " " : "");
      if constexpr (std::is_same_v<typename std::decay_t<decltype(values)>::value_type, double>) {
        out << format_double(values[i]);
      } else {
        out << values[i];
      }
    }
  };
  switch (kind_) {
    case Kind::kQuadratic:
      out << "quadratic P = [";
      list(coefficients_);
      out << "]";
      break;
    case Kind::kEvenPowerSum:
      out << "even-power-sum exponents = [";
      list(exponents_);
      out << "] weights = [";
      list(coefficients_);
      out << "]";
      break;
    case Kind::kLinear:
      out << "linear w = [";
      list(coefficients_);
      out << "]";
      break;
  }
  return out.str();
}

double gradient_consistency(const LyapunovCandidate& v, double radius, std::size_t points,
                            std::uint64_t seed) {
  const std::size_t d = v.dim();
  const auto xs = ball_samples(d, radius, points, seed);
  constexpr double h = 1e-5;
  double worst = 0.0;
  std::vector<double> x(d), grad(d);
  for (std::size_t k = 0; k < points; ++k) {
    std::copy_n(xs.begin() + k * d, d, x.begin());
    v.gradient(x, grad);
    for (std::size_t i = 0; i < d; ++i) {
      const double keep = x[i];
      x[i] = keep + h;
      const double up = v.evaluate(x);
      x[i] = keep - h;
      const double down = v.evaluate(x);
      x[i] = keep;
      const double fd = (up - down) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - grad[i]) / std::max(std::abs(grad[i]), 1e-3));
    }
  }
  return worst;
}

}  // namespace fraclyap::lyapcheck
