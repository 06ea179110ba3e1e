#pragma once

#include <stdexcept>
#include <string>

namespace twobc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when a boundary condition cannot be imposed because the state being
/// conditioned has no weight on the boundary projector (A = 0 or B = 0).
class ImpossibleBoundary : public Error {
 public:
  using Error::Error;
};

/// No history sequence carries weight between the two boundaries.
class AllWeightsZero : public Error {
 public:
  using Error::Error;
};

class SequenceCapExceeded : public Error {
 public:
  using Error::Error;
};

class UntaggedInterval : public Error {
 public:
  using Error::Error;
};

}  // namespace twobc
