#pragma once

#include <stdexcept>
#include <string>

namespace wnls {

// Error taxonomy used across the library. The CLI maps these to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad configuration values (sizes, exponent window, file schema).
struct ConfigError : Error {
  using Error::Error;
};

// Mixed grids, out-of-range arguments.
struct DomainError : Error {
  using Error::Error;
};

// Caller violated an operation precondition (degenerate input, y-varying
// field passed to a reduced evaluation, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// A certified-threshold gate was not met.
struct GateError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// Solver failed to converge; diagnostics are still returned where possible.
struct DivergedError : Error {
  using Error::Error;
};

// Checkpoint / file format problems; carries a byte offset when known.
struct IoError : Error {
  explicit IoError(const std::string& msg, long long offset = -1)
      : Error(msg), byte_offset(offset) {}
  long long byte_offset;
};

}  // namespace wnls
