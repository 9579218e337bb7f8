#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moelab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: invalid element for a group, bad multiplication table,
/// unparseable group expression, ill-formed density matrix, and the like.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation would enumerate more elements (or allocate a larger
/// state space) than the configured budget allows.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for this group description
/// (for example, exhaustive search on an infinite group).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A numeric operation left its domain (division by an interval containing
/// zero, logarithm of a non-positive interval, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parse failure for the group-expression grammar; carries the offset of
/// the offending character in the input string.
class SpecParseError : public ValidationError {
 public:
  SpecParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace moelab
