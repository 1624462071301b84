#pragma once

#include <stdexcept>
#include <string>

namespace nlvar {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGridError : public Error {
 public:
  using Error::Error;
};

/// A coordinate or parameter outside the admissible range of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where a 1/(X-x) kernel is singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// W returned NaN or infinity at some quadrature point.
class NonFiniteEnergyError : public Error {
 public:
  NonFiniteEnergyError(const std::string& what, double x, double X)
      : Error(what), x_(x), X_(X) {}
  double x() const noexcept { return x_; }
  double X() const noexcept { return X_; }

 private:
  double x_;
  double X_;
};

}  // namespace nlvar
