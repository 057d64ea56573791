#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hc {

// Base of every library-raised error. Precondition violations on plain
// arguments (unordered rectangle, odd oracle n, ...) use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string message)
      : Error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position),
        message_(std::move(message)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

enum class EvalErrorKind { DivByZero, DomainError };

class EvalError : public Error {
 public:
  EvalError(EvalErrorKind kind, std::size_t position, const std::string& what)
      : Error(what), kind_(kind), position_(position) {}

  EvalErrorKind kind() const noexcept { return kind_; }
  // Source offset of the offending subexpression.
  std::size_t position() const noexcept { return position_; }

 private:
  EvalErrorKind kind_;
  std::size_t position_;
};

class SingularityInDomain : public Error {
 public:
  using Error::Error;
};

class UnboundedDerivative : public Error {
 public:
  using Error::Error;
};

class UnknownBuiltin : public Error {
 public:
  explicit UnknownBuiltin(const std::string& name) : Error("unknown builtin function '" + name + "'") {}
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace hc
