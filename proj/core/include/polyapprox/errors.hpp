#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyapprox {

enum class ErrorCode {
  DegenerateInput,
  EmptyIntersection,
  OriginNotInterior,
  NonConvergence,
  DomainError,
  UnsupportedDimension,
  UnsupportedBodyKind,
  IllConditioned,
  RejectionStall,
  OffBoundary,
  BudgetTooSmall,
  InvalidMoments,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Input problems (as opposed to numerical failures inside an estimator).
  bool is_input_error() const noexcept;

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace polyapprox
