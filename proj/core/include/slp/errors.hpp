#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed expressions, invalid problems, inconsistent parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

// A computation that should have worked did not converge or produced garbage.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : InputError(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& subexpr, double x, const std::string& why);
  const std::string& subexpression() const noexcept { return subexpr_; }
  double at() const noexcept { return x_; }

 private:
  std::string subexpr_;
  double x_;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace slp
