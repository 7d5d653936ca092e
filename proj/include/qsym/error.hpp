#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsym {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph file; carries the 1-based line number (0 when not line specific).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input outside its domain (e.g. a disconnected graph).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A term lies outside the subspace a functional is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The deduction engine derived a contradiction. Every rule is a theorem, so
/// this always indicates an implementation bug, never a property of the graph.
class SoundnessFault : public Error {
 public:
  using Error::Error;
};

}  // namespace qsym
