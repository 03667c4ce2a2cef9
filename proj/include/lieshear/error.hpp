#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lieshear {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed Salamon string, form literal or vector literal.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands live on frames of different dimension, or a degree is wrong.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input that violates its precondition
/// (not nilpotent, alpha(X) != 1, xi not an ideal, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input algebra fails d∘d = 0.
class JacobiError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Enumeration would exceed the configured candidate cap.
class SearchCapError : public Error {
 public:
  SearchCapError(const std::string& what, std::size_t candidates)
      : Error(what), candidates_(candidates) {}

  std::size_t candidates() const noexcept { return candidates_; }

 private:
  std::size_t candidates_;
};

}  // namespace lieshear
