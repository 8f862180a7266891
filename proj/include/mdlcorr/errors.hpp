#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdlcorr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument or specification violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical function was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (no root, no convergence, undefined flow).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A data column has zero variance and cannot be correlated.
class DegenerateFeature : public Error {
 public:
  DegenerateFeature(std::size_t column, const std::string& name)
      : Error("feature " + std::to_string(column) +
              (name.empty() ? std::string() : " ('" + name + "')") +
              " has zero variance"),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Malformed input file. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdlcorr
