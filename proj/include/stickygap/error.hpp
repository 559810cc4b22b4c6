#pragma once

#include <stdexcept>
#include <string>

namespace stickygap {

// Root of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument or spec violates a documented invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A model needs a constant the library cannot supply (e.g. C_Omega for d >= 3).
class MissingConstant : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numerical failure on otherwise valid input.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NoRootFound : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonFinite : public NumericError {
 public:
  using NumericError::NumericError;
};

// A computed quantity broke a guarantee it must satisfy (e.g. gamma_L <= 1).
class InvariantViolation : public NumericError {
 public:
  using NumericError::NumericError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace stickygap
