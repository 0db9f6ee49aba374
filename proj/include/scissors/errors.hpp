#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scissors {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (log 0, D2 at 0 or 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input structure: bad polynomial, bad edge list, bad slot coverage.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Geometric degeneracy: coincident points, parameters hitting {0, 1}.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Relation detection could not decide at the configured precision and bound.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scissors
