#pragma once

#include <stdexcept>
#include <string>

namespace ahm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that should lie in SL(2,C) does not.
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Initial-value integration blew up before reaching the far endpoint.
class ShotFailedError : public Error {
 public:
  ShotFailedError(const std::string& what, double last_r)
      : Error(what), last_r_(last_r) {}
  double last_r() const noexcept { return last_r_; }

 private:
  double last_r_;
};

}  // namespace ahm
