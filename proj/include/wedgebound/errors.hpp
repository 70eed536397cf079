#pragma once

#include <stdexcept>
#include <string>

namespace wedgebound {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed geometry (non-simple polygon, bad radii, stray slit, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed domain file or built-in name. `line` is 1-based, 0 when the
/// error is not tied to a line.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, int line = 0) : std::invalid_argument(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The domain is not contained in the requested wedge.
class ContainmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iteration failed to converge or a root could not be bracketed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The mesher cannot handle this geometry.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wedgebound
