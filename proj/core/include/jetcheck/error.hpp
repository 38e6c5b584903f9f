#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetcheck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or problem-file text. `position` is a byte offset
/// into the parsed string; `line` is 1-based when the text came from a file
/// (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, std::size_t line = 0);

  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
  std::size_t line_;
};

class UnknownIdentifierError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A node kind that cannot enter a polynomial normal form (sqrt, arctan).
class UnsupportedNodeError : public Error {
 public:
  UnsupportedNodeError(const std::string& message, std::string subtree)
      : Error(message + ": " + subtree), subtree_(std::move(subtree)) {}
  [[nodiscard]] const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

class JetOrderOverflowError : public Error {
 public:
  using Error::Error;
};

class CyclicBindingError : public Error {
 public:
  using Error::Error;
};

/// Raised by numeric evaluation: unbound generator, sqrt of a negative,
/// division by zero or any non-finite intermediate.
class EvalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ConstraintViolationError : public Error {
 public:
  using Error::Error;
};

class BlowupError : public Error {
 public:
  BlowupError(const std::string& message, long step, double time)
      : Error(message), step_(step), time_(time) {}
  [[nodiscard]] long step() const noexcept { return step_; }
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  long step_;
  double time_;
};

}  // namespace jetcheck
