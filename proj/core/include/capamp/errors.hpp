#pragma once

#include <stdexcept>
#include <string>

namespace capamp {

// Base for every error raised by the library. Callers that only care about
// "something was out of contract" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar argument is outside the documented domain (probabilities outside
// [0,1], non-positive dimensions, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The requested object would exceed the configured dimension cap.
class DimensionCap : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

// Matrix is not a density operator within tolerance (negative spectrum or
// trace away from one).
class NotAState : public Error {
 public:
  using Error::Error;
};

// Kraus set is not trace preserving, or a Choi operator has the wrong marginal.
class NotAChannel : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

// Parameter combination for which no threshold / plan exists.
class InfeasibleParams : public Error {
 public:
  using Error::Error;
};

}  // namespace capamp
