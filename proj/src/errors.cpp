#include "sisres/errors.hpp"

namespace sisres {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::TowerDepthExceeded: return "TowerDepthExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::CenterNotOnDivisor: return "CenterNotOnDivisor";
    case ErrorKind::NonReduced: return "NonReduced";
    case ErrorKind::FieldExtensionFailure: return "FieldExtensionFailure";
    case ErrorKind::CurveUnknown: return "CurveUnknown";
    case ErrorKind::CommonComponent: return "CommonComponent";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::TangentConeNotReduced: return "TangentConeNotReduced";
    case ErrorKind::NotSuperisolated: return "NotSuperisolated";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InconsistentDivisor: return "InconsistentDivisor";
    case ErrorKind::GenericityAlarm: return "GenericityAlarm";
    case ErrorKind::ZeroOnComponent: return "ZeroOnComponent";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
  }
  return "Error";
}

bool is_usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::UnknownGenerator:
    case ErrorKind::SchemaVersionMismatch:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

ParseError::ParseError(ErrorKind kind, std::size_t pos, const std::string& what)
    : Error(kind, what + " at position " + std::to_string(pos)), pos_(pos) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sisres
