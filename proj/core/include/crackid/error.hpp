#pragma once

#include <stdexcept>
#include <string>

namespace crackid {

/// Input violates a documented invariant (bad crack set, mesh, parameters...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A well-formed input produced a degenerate numerical configuration.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crackid
