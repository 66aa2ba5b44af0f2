#pragma once

#include <stdexcept>
#include <string>

namespace sisres {

enum class ErrorKind {
  DivisionByZero,
  ContextMismatch,
  NotIrreducible,
  TowerDepthExceeded,
  InvalidArgument,
  SyntaxError,
  UnknownVariable,
  UnknownGenerator,
  ZeroPolynomial,
  DegreeTooLarge,
  CenterNotOnDivisor,
  NonReduced,
  FieldExtensionFailure,
  CurveUnknown,
  CommonComponent,
  NotHomogeneous,
  TangentConeNotReduced,
  NotSuperisolated,
  DegreeMismatch,
  InconsistentDivisor,
  GenericityAlarm,
  ZeroOnComponent,
  SchemaVersionMismatch,
};

const char* error_name(ErrorKind k);

// Errors caused by malformed user input rather than by the mathematics.
bool is_usage_error(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  ParseError(ErrorKind kind, std::size_t pos, const std::string& what);
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace sisres
