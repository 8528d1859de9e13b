#pragma once

#include <stdexcept>
#include <string>

namespace dcirc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document (bad JSON, wrong field types).
struct ParseError : Error {
  using Error::Error;
};

/// Structurally well-formed input violating a model invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// An analysis was asked for something its preconditions exclude
/// (unavailable alternative, linear utility where exponential is required, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// A condition that validated inputs should make impossible.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace dcirc
