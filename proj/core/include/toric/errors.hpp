#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Input violates a documented precondition (bad parameters, malformed data).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A point lies outside the open domain of a potential or polytope.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what = "singular matrix")
      : std::runtime_error(what) {}
};

/// A numerical procedure failed to reach its tolerance (no bracket,
/// indefinite Hessian, stencil cannot be fitted into the domain, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toric
