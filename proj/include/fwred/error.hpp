#pragma once

#include <stdexcept>
#include <string>

namespace fwred {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeclarationError : public Error {
  using Error::Error;
};

/// Caller violated an operation's precondition (mismatched tables, wrong sector, ...).
class UsageError : public Error {
  using Error::Error;
};

class UnsupportedError : public Error {
  using Error::Error;
};

/// A mass limit diverges.
class LimitError : public Error {
  using Error::Error;
};

/// A generator with effective order >= 0 was handed to the BCH series.
class NonterminationError : public Error {
  using Error::Error;
};

class EqualMassError : public Error {
  using Error::Error;
};

class DivergenceError : public Error {
  using Error::Error;
};

class ReferenceError : public Error {
  using Error::Error;
};

class EvaluationError : public Error {
  using Error::Error;
};

class NumericalError : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace fwred
