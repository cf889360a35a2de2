// SPDX-License-Identifier: Apache-2.0
#include "translab/errors.hpp"

namespace translab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NonMonotoneR: return "NonMonotoneR";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::UmbilicWindow: return "UmbilicWindow";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::NewtonStalled: return "NewtonStalled";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorCode::ContinuationBroken: return "ContinuationBroken";
    case ErrorCode::ResolutionLost: return "ResolutionLost";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::RegionOutOfBounds: return "RegionOutOfBounds";
    case ErrorCode::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace translab
