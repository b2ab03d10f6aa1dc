#include "reslab/errors.hpp"

#include <cstdio>

namespace reslab {

std::string_view reason_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kNoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::kRefinementNeeded: return "REFINEMENT_NEEDED";
    case ErrorCode::kBudgetExhausted: return "BUDGET_EXHAUSTED";
    case ErrorCode::kDivergent: return "DIVERGENT";
    case ErrorCode::kMeasureZeroPoint: return "MEASURE_ZERO_POINT";
    case ErrorCode::kBoundaryEvaluationRequired: return "BOUNDARY_EVALUATION_REQUIRED";
    case ErrorCode::kNoFiniteResonance: return "NO_FINITE_RESONANCE";
    case ErrorCode::kRealResonance: return "REAL_RESONANCE";
    case ErrorCode::kSplitRequired: return "SPLIT_REQUIRED";
    case ErrorCode::kNotAResonance: return "NOT_A_RESONANCE";
    case ErrorCode::kUnstableIndex: return "UNSTABLE_INDEX";
    case ErrorCode::kEndpointAmbiguity: return "ENDPOINT_AMBIGUITY";
    case ErrorCode::kUnsupportedModel: return "UNSUPPORTED_MODEL";
    case ErrorCode::kConsistency: return "CONSISTENCY";
    case ErrorCode::kConfig: return "CONFIG";
  }
  return "UNKNOWN";
}

namespace {
std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}
}  // namespace

RootFindingError::RootFindingError(std::vector<std::complex<double>> best, double residual,
                                   int iterations)
    : Error(ErrorCode::kNoConvergence,
            fmt("polynomial root finder did not converge (residual %.3e after %g iterations)",
                residual, iterations)),
      best_(std::move(best)),
      residual_(residual),
      iterations_(iterations) {}

RefinementNeeded::RefinementNeeded(std::size_t index, double jump)
    : Error(ErrorCode::kRefinementNeeded,
            fmt("phase jump %.6g at sample %g exceeds pi/2; refine the grid", jump,
                static_cast<double>(index))),
      index_(index),
      jump_(jump) {}

QuadratureBudgetError::QuadratureBudgetError(std::complex<double> estimate, double error_estimate,
                                             int panels)
    : Error(ErrorCode::kBudgetExhausted,
            fmt("quadrature panel budget (%g) exhausted, error estimate %.3e",
                static_cast<double>(panels), error_estimate)),
      estimate_(estimate),
      error_estimate_(error_estimate) {}

SplitRequired::SplitRequired(double location)
    : Error(ErrorCode::kSplitRequired,
            fmt("real resonance point at %.17g lies inside the coupling range; split there",
                location)),
      location_(location) {}

}  // namespace reslab
