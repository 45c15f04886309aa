#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsat {

enum class ErrorKind {
  InvalidCharacter,
  EmptyInput,
  WidthMismatch,
  WidthTooSmall,
  WidthTooLarge,
  MalformedSegment,
  MalformedHeader,
  NonTernaryClause,
  RepeatedVariable,
  VariableOutOfRange,
  IndexOutOfRange,
  OutOfTableBounds,
  InvalidBlockSize,
  CurveTooShort,
  LevelNotBracketed,
  InvalidArgument,
};

const char *errorKindName(ErrorKind kind);

/// Error raised by every fallible operation in the library. `index()` carries
/// the character position, segment index or clause index the error refers
/// to, when there is one.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message,
        std::ptrdiff_t index = -1);

  ErrorKind kind() const { return kind_; }
  std::ptrdiff_t index() const { return index_; }

private:
  ErrorKind kind_;
  std::ptrdiff_t index_;
};

} // namespace tsat
