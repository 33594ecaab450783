#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blspec {

// Root of every error raised by the library. Derived types name the failure
// kinds the CLI maps onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MixedFieldError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class InvalidEnclosure : public Error {
 public:
  using Error::Error;
};

class RationalInput : public Error {
 public:
  using Error::Error;
};

class InsufficientQuotients : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ComplexityMismatch : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Malformed textual input; `position` is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace blspec
