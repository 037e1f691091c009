#pragma once

#include <stdexcept>
#include <string>

namespace quasinv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or configuration. The CLI maps these to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};
class InvalidDomain : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};
class BadCharacteristic : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};
class RangeViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};
class DenominatorVanishes : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};
class ZeroInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A proved statement failed to hold on computed data, which means the
// implementation is broken. The CLI maps these to exit code 3.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};
class TheoremViolation : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class NotProportional : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class DenominatorResidue : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class DegenerateLift : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class NormalizationFailure : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class MembershipFailure : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};
class MinimalityFailure : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

// Checkpoint file unreadable or inconsistent. Exit code 4.
class CheckpointCorrupt : public Error {
 public:
  using Error::Error;
};

}  // namespace quasinv
