#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcrank {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value lies outside the mathematical domain of an operation
// (non-positive entry, d < 1, KI requested for n <= 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dimension mismatch or wrong number of entries.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Bad argument that is neither a domain nor a shape problem
// (repeated triad indices, empty record list, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix or config text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parsed matrix is not reciprocal. Row and column are 1-based.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t row, std::size_t col)
      : Error("entry (" + std::to_string(row) + "," + std::to_string(col) +
              "): " + what),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Missing table entry, e.g. no RI value for the requested order.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcrank
