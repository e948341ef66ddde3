#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gburn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when not tied to a line.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
  std::size_t line;
};

struct EmptyGraphError : Error {
  EmptyGraphError() : Error("graph has no vertices") {}
};

struct ParameterError : Error {
  using Error::Error;
};

/// A search or table exceeded its configured node/memory budget.
struct CapacityError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

struct BackendError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

}  // namespace gburn
