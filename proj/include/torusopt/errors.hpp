#pragma once

#include <stdexcept>
#include <string>

namespace torusopt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input file could not be decoded at all (malformed JSON, wrong types).
struct ParseError : Error {
  using Error::Error;
};

/// A 1-form failed a structural precondition (not closed, side mismatch,
/// inconsistent integration).
struct FormError : Error {
  using Error::Error;
};

/// Weights are degenerate: the energy form is not positive definite on
/// closed 1-forms, so the harmonic solve is not well posed.
struct DegenerateWeightsError : Error {
  using Error::Error;
};

/// A 2x2 matrix that does not satisfy the response-matrix sign conditions.
struct ResponseMatrixError : Error {
  using Error::Error;
};

/// The brute-force minimizer failed (boundary escape, starts disagree).
struct OracleError : Error {
  using Error::Error;
};

/// Two independent computation routes disagree beyond tolerance; indicates
/// a bug, never expected on valid input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace torusopt
