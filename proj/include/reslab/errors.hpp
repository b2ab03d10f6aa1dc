#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reslab {

/// Machine-readable failure classes. Reports map these to skip reasons.
enum class ErrorCode {
  kInvalidArgument,
  kNoConvergence,
  kRefinementNeeded,
  kBudgetExhausted,
  kDivergent,
  kMeasureZeroPoint,
  kBoundaryEvaluationRequired,
  kNoFiniteResonance,
  kRealResonance,
  kSplitRequired,
  kNotAResonance,
  kUnstableIndex,
  kEndpointAmbiguity,
  kUnsupportedModel,
  kConsistency,
  kConfig,
};

std::string_view reason_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Root finder gave up; carries what it had.
class RootFindingError : public Error {
 public:
  RootFindingError(std::vector<std::complex<double>> best, double residual, int iterations);
  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<std::complex<double>> best_;
  double residual_;
  int iterations_;
};

class RefinementNeeded : public Error {
 public:
  RefinementNeeded(std::size_t index, double jump);
  std::size_t index() const noexcept { return index_; }
  double jump() const noexcept { return jump_; }

 private:
  std::size_t index_;
  double jump_;
};

class QuadratureBudgetError : public Error {
 public:
  QuadratureBudgetError(std::complex<double> estimate, double error_estimate, int panels);
  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> estimate_;
  double error_estimate_;
};

class SplitRequired : public Error {
 public:
  explicit SplitRequired(double location);
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace reslab
