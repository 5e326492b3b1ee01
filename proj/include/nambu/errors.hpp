#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nambu {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different ambient dimensions, or sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Rational and complex-rational scalars were mixed.
class ModeError : public Error {
 public:
  using Error::Error;
};

// An argument is outside the operation's domain (degree, index, arity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nambu
