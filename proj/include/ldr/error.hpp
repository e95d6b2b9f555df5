#pragma once

#include <stdexcept>
#include <string>

namespace ldr {

// Base type for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad caller input: non-finite coordinates, missing bin labels, invalid
// parameter values. CLI exit code 2.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Empty cloud / empty dataset where at least one element is required.
class EmptyInputError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Malformed or truncated file contents. Messages carry a byte offset or
// line number locating the problem.
class FormatError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Degenerate domain, e.g. a zero-width vertical-angle range split into
// more than one bin. CLI exit code 3.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Mismatched grid or tensor shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss during optimization. Message names the epoch or step.
// CLI exit code 4.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldr
