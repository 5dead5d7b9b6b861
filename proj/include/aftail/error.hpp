#pragma once

#include <stdexcept>
#include <string>

namespace aftail {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A level, vertex or edge outside the stored diagram or a violated ordering
// precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation needed an edge beyond the truncation depth. Distinct from an
// empty result: the diagram continues, the stored truncation does not.
class DepthExhausted : public Error {
 public:
  using Error::Error;
};

// Operands built over different path spaces.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// A table would exceed the configured entry cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aftail
