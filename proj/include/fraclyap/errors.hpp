#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraclyap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument is inside the domain but outside the region where the stated
/// accuracy is guaranteed.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Constants or parameters violate a structural constraint.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Grids or dimensions of two inputs do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The solver met a non-finite or exploding state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t last_valid_node)
      : Error(what), last_valid_node_(last_valid_node) {}

  std::size_t last_valid_node() const noexcept { return last_valid_node_; }

 private:
  std::size_t last_valid_node_;
};

/// Configuration document rejected. `line()` is 0 when the problem is not
/// tied to a single line (e.g. a missing key).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fraclyap
