#include <cmath>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

ExtrapolationResult boundary_extrapolate(const std::function<Complex(double)>& f,
                                         const ExtrapolationSchedule& schedule) {
  if (schedule.levels < 5 || !(schedule.y0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "extrapolation needs y0 > 0 and at least 5 levels");
  }
  const int n = schedule.levels + 1;
  std::vector<Complex> samples(n);
  double y = schedule.y0;
  for (int k = 0; k < n; ++k, y *= 0.5) {
    samples[k] = f(y);
    if (!std::isfinite(samples[k].real()) || !std::isfinite(samples[k].imag())) {
      throw Error(ErrorCode::kDivergent, "boundary samples are not finite");
    }
  }

  // Halving sequence: eliminate the O(y) term, then the O(y^2) term.
  std::vector<Complex> first(n), second(n);
  for (int k = 1; k < n; ++k) first[k] = 2.0 * samples[k] - samples[k - 1];
  for (int k = 2; k < n; ++k) second[k] = (4.0 * first[k] - first[k - 1]) / 3.0;

  const Complex value = second[n - 1];
  const double error = std::abs(second[n - 1] - second[n - 2]);

  const double d1 = std::abs(second[n - 2] - second[n - 3]);
  const double d0 = std::abs(second[n - 3] - second[n - 4]);
  const bool growing = error > d1 && d1 > d0;
  if (growing && error > 1e-6 * (1.0 + std::abs(value))) {
    throw Error(ErrorCode::kDivergent,
                "boundary extrapolation diverges; the point is excluded for this model");
  }
  return {value, error};
}

}  // namespace reslab
