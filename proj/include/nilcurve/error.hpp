#pragma once

#include <stdexcept>
#include <string>

namespace nilcurve {

// Base class; exit_code() maps onto the CLI status.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int code) : std::runtime_error(what), code_(code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

// Malformed input, failed structural validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what, 1) {}
};

// Input is well formed but violates a mathematical precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what, 2) {}
};

// Integrator failure, unresolved roots.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what, 3) {}
};

// A check found an object the theory says cannot exist.
class ContradictionFound : public Error {
 public:
  explicit ContradictionFound(const std::string& what) : Error(what, 4) {}
};

}  // namespace nilcurve
