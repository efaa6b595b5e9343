#pragma once

#include <stdexcept>
#include <string>

namespace iwalab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched ambient data (different prime or precision) between operands.
struct ConfigError : Error {
  using Error::Error;
};

/// Input outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

/// A result could not be certified at the declared precision.
struct PrecisionExhausted : Error {
  using Error::Error;
};

/// A degree or size cap was exceeded.
struct ResourceError : Error {
  using Error::Error;
};

/// A quotient that should be finite is infinite (common factor detected).
struct InfiniteQuotient : Error {
  using Error::Error;
};

/// A scan did not stabilize within the allowed window.
struct NoStabilization : Error {
  using Error::Error;
};

/// An operation requiring a torsion module was applied to a model with free rank.
struct ConditionTViolated : Error {
  using Error::Error;
};

/// A scenario hypothesis failed its check.
struct HypothesisNotMet : Error {
  using Error::Error;
};

/// A required asserted input was not supplied.
struct UnverifiedHypothesis : Error {
  using Error::Error;
};

/// An internal consistency check between two computation routes failed.
struct StructuralError : Error {
  using Error::Error;
};

}  // namespace iwalab
