#include "asymspec/error.hpp"

namespace asymspec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ExprError: return "ExprError";
    case ErrorCode::DivisionNearZero: return "DivisionNearZero";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnresolvedPoint: return "UnresolvedPoint";
    case ErrorCode::SingularOnContour: return "SingularOnContour";
    case ErrorCode::NonEnclosing: return "NonEnclosing";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& what)
    : Error(ErrorCode::ParseError, what), offset_(offset), expected_(std::move(expected)) {}

}  // namespace asymspec
