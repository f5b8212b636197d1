#pragma once

#include <stdexcept>
#include <string>

namespace curvflow {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph or vertex-function input. The message carries the
/// location (line/column for syntax errors, JSON path otherwise).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A vertex function whose domain does not match the graph.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a connected graph was handed a disconnected one.
class DisconnectedError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvflow
