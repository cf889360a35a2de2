// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace translab {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  DegenerateMetric,
  MarginTooSmall,
  DegenerateEdge,
  OutOfDomain,
  StepTooLarge,
  NonMonotoneR,
  WindowTooNarrow,
  UmbilicWindow,
  ShapeMismatch,
  Precondition,
  NewtonStalled,
  MaxIterations,
  LinearSolveFailure,
  ContinuationBroken,
  ResolutionLost,
  InsufficientData,
  RegionOutOfBounds,
  PerturbationTooLarge,
  EmptyMask,
  IoError,
  UsageError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) fail(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace translab
