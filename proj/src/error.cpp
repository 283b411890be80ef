#include "oramod/error.hpp"

namespace oramod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NotDownset: return "NotDownset";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::InvalidNucleus: return "InvalidNucleus";
    case ErrorCode::InvalidContainer: return "InvalidContainer";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::OpenTerm: return "OpenTerm";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

}  // namespace oramod
