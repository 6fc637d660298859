#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sawkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value violates a type invariant or an operation precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A fitter failed to produce a usable optimum.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace sawkit
