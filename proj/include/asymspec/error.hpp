#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace asymspec {

enum class ErrorCode {
  DimensionMismatch,
  BadParameter,
  OutOfRange,
  LengthMismatch,
  ParseError,
  ExprError,
  DivisionNearZero,
  UnboundVariable,
  UnresolvedPoint,
  SingularOnContour,
  NonEnclosing,
  SchemaError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& what);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Schema violations point at the offending JSON location.
class SchemaError : public Error {
public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(ErrorCode::SchemaError, pointer + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

private:
  std::string pointer_;
};

}  // namespace asymspec
