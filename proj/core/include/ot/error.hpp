#pragma once

#include <stdexcept>
#include <string>

namespace ot {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (dimensions, duplicate sites, bad JSON).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter outside its admissible range (epsilon <= 0, eta <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A transport plan with negative entries.
class InvalidPlanError : public Error {
 public:
  using Error::Error;
};

/// A target mass that cannot be reached by moving a single price.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Linear system that is singular beyond the constant direction.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, double pivot_ratio)
      : Error(what), pivot_ratio_(pivot_ratio) {}
  double pivot_ratio() const noexcept { return pivot_ratio_; }

 private:
  double pivot_ratio_;
};

/// Damped Newton could not find an admissible step length.
class LineSearchError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_dimension_mismatch(const char* where, long expected, long got);

}  // namespace ot
