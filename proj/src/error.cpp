#include "tsat/error.h"

namespace tsat {

const char *errorKindName(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidCharacter: return "InvalidCharacter";
  case ErrorKind::EmptyInput: return "EmptyInput";
  case ErrorKind::WidthMismatch: return "WidthMismatch";
  case ErrorKind::WidthTooSmall: return "WidthTooSmall";
  case ErrorKind::WidthTooLarge: return "WidthTooLarge";
  case ErrorKind::MalformedSegment: return "MalformedSegment";
  case ErrorKind::MalformedHeader: return "MalformedHeader";
  case ErrorKind::NonTernaryClause: return "NonTernaryClause";
  case ErrorKind::RepeatedVariable: return "RepeatedVariable";
  case ErrorKind::VariableOutOfRange: return "VariableOutOfRange";
  case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorKind::OutOfTableBounds: return "OutOfTableBounds";
  case ErrorKind::InvalidBlockSize: return "InvalidBlockSize";
  case ErrorKind::CurveTooShort: return "CurveTooShort";
  case ErrorKind::LevelNotBracketed: return "LevelNotBracketed";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message, std::ptrdiff_t index)
    : std::runtime_error(std::string(errorKindName(kind)) + ": " + message),
      kind_(kind), index_(index) {}

} // namespace tsat
