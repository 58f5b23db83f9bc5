#pragma once

#include <stdexcept>
#include <string>

namespace robenergy {

/// Base class of all toolkit exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: unreadable files, dimension mismatches, out-of-range
/// arguments. Mapped to exit code 1 by the CLI.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message carries the source name and, when
/// known, the offending line. Mapped to exit code 1 by the CLI.
class ParseError : public InputError {
 public:
  explicit ParseError(const std::string& message) : InputError(message) {}
  ParseError(const std::string& source, int line, const std::string& message)
      : InputError(line > 0 ? source + ":" + std::to_string(line) + ": " + message
                            : source + ": " + message) {}
};

/// Numerical degeneracy: rank-deficient regression, asymmetric mass matrix,
/// failed consistency checks. Mapped to exit code 2 by the CLI.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace robenergy
