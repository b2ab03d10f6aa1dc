#include <cmath>
#include <numbers>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

PhaseSamples unwrap_phase(std::span<const Complex> points, double anchor) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  PhaseSamples out;
  if (points.empty()) return out;
  for (const auto& p : points) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || std::abs(std::abs(p) - 1.0) > 1e-8) {
      throw Error(ErrorCode::kInvalidArgument, "unwrap_phase expects unit-modulus points");
    }
  }
  out.source_points.assign(points.begin(), points.end());
  out.arguments.reserve(points.size());
  out.arguments.push_back(anchor);

  // Each value is re-snapped to principal arg + 2 pi n so no rounding drift
  // accumulates along long traces.
  const double offset = anchor - std::arg(points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double step = std::arg(points[i] / points[i - 1]);
    if (std::abs(step) > std::numbers::pi / 2) throw RefinementNeeded(i, step);
    const double predicted = out.arguments.back() + step;
    const double principal = std::arg(points[i]) + offset;
    const double turns = std::round((predicted - principal) / kTwoPi);
    out.arguments.push_back(principal + kTwoPi * turns);
  }
  return out;
}

}  // namespace reslab
