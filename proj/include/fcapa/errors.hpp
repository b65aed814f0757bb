// SPDX-License-Identifier: Apache-2.0
//
// fcapa: flexible continuous-aperture array optimization library.

#pragma once

#include <stdexcept>
#include <string>

namespace fcapa {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad user-supplied configuration (non-positive sizes, resolution too small, ...).
class InvalidConfigError : public Error {
  public:
    using Error::Error;
};

// Query point outside the parameter rectangle.
class OutOfDomainError : public Error {
  public:
    using Error::Error;
};

// Green's function evaluated at (or too close to) its singularity.
class SingularityError : public Error {
  public:
    using Error::Error;
};

// Solver state from which no update is defined (all-zero auxiliaries, zero power).
class DegenerateStateError : public Error {
  public:
    using Error::Error;
};

// Linear solve rejected due to ill conditioning.
class ConditioningError : public Error {
  public:
    using Error::Error;
};

// Mismatched array/matrix dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

// Rank-deficient channel matrix where full column rank is required.
class RankError : public Error {
  public:
    using Error::Error;
};

// File I/O failure; message carries the path.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace fcapa
