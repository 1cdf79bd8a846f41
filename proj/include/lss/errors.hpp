#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lss {

/// Base class for all toolchain errors. Subclasses map to distinct CLI exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Mismatched qubit counts or sizes between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what_arg)
      : Error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid object or unsupported operation input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested resources exceed what a layout or oracle can hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure (corrupt tableau, cyclic graph, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// An operation cannot be placed on the given layout.
class SchedulingError : public Error {
 public:
  SchedulingError(std::size_t source_index, const std::string& what_arg)
      : Error(what_arg), source_index_(source_index) {}
  std::size_t source_index() const noexcept { return source_index_; }

 private:
  std::size_t source_index_;
};

}  // namespace lss
