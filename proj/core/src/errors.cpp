#include "polyapprox/errors.hpp"

namespace polyapprox {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnsupportedBodyKind: return "UnsupportedBodyKind";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::OffBoundary: return "OffBoundary";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::InvalidMoments: return "InvalidMoments";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case ErrorCode::NonConvergence:
    case ErrorCode::IllConditioned:
    case ErrorCode::RejectionStall:
      return false;
    default:
      return true;
  }
}

}  // namespace polyapprox
