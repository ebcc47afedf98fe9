#pragma once

#include <stdexcept>
#include <string>

namespace gencontact {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& name)
      : Error("unknown symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands live in different scalar contexts") {}
};

/// Thrown when a derivation is applied to a first-derivative symbol of a
/// formal jet.
class SecondOrderDerivativeRequired : public Error {
 public:
  explicit SecondOrderDerivativeRequired(const std::string& what)
      : Error("second-order derivative required: " + what) {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Line and column are 1-based; zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column = 0)
      : Error(location(line, column) + msg), message_(msg), line_(line), column_(column) {}
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string location(int line, int column) {
    if (line <= 0 && column <= 0) return "";
    std::string out = line > 0 ? "line " + std::to_string(line) : "";
    if (column > 0) out += (out.empty() ? "column " : ", column ") + std::to_string(column);
    return out + ": ";
  }

  std::string message_;
  int line_;
  int column_;
};

class ZeroSpinorAtPoint : public Error {
 public:
  using Error::Error;
};

class NotPolynomial : public Error {
 public:
  using Error::Error;
};

}  // namespace gencontact
