#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

namespace {

constexpr double kMaxStep = std::numbers::pi / 4;
constexpr double kConsistency = 1e-10;
constexpr int kMaxDepth = 64;
constexpr std::size_t kMaxSamples = 1u << 20;

Complex checked(const std::function<Complex(double)>& f, double s) {
  const Complex v = f(s);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::kInvalidArgument, "phase function is singular on the path");
  }
  return v;
}

struct Refiner {
  const std::function<Complex(double)>& f;
  std::vector<double>& nodes;
  std::vector<Complex>& values;
  std::size_t evaluations = 0;

  // Appends the interior and right-end samples of (s0, s1].
  void refine(double s0, Complex v0, double s1, Complex v1, int depth) {
    const double mid = 0.5 * (s0 + s1);
    if (++evaluations > kMaxSamples) throw RefinementNeeded(nodes.size(), 0.0);
    const Complex vm = checked(f, mid);
    const double whole = std::arg(v1 / v0);
    const double left = std::arg(vm / v0);
    const double right = std::arg(v1 / vm);
    const bool resolved = std::abs(left) <= kMaxStep && std::abs(right) <= kMaxStep &&
                          std::abs(left + right - whole) <= kConsistency;
    if (resolved) {
      nodes.push_back(mid);
      values.push_back(vm);
      nodes.push_back(s1);
      values.push_back(v1);
      return;
    }
    if (depth >= kMaxDepth || mid == s0 || mid == s1) {
      throw RefinementNeeded(nodes.size(), left + right);
    }
    refine(s0, v0, mid, vm, depth + 1);
    refine(mid, vm, s1, v1, depth + 1);
  }
};

}  // namespace

PhasePath adaptive_phase_path(const std::function<Complex(double)>& unit_value, double from,
                              double to, double anchor, int initial_intervals,
                              std::span<const double> breakpoints) {
  if (!std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorCode::kInvalidArgument, "phase path endpoints must be finite");
  }
  if (initial_intervals < 1) initial_intervals = 1;
  PhasePath path;
  std::vector<Complex> values;
  path.nodes.push_back(from);
  values.push_back(checked(unit_value, from));
  if (from != to) {
    Refiner refiner{unit_value, path.nodes, values};
    const double width = (to - from) / initial_intervals;
    std::vector<double> grid;
    for (int i = 1; i < initial_intervals; ++i) grid.push_back(from + i * width);
    const double lo = std::min(from, to);
    const double hi = std::max(from, to);
    for (double b : breakpoints) {
      if (b > lo && b < hi) grid.push_back(b);
    }
    if (to > from) {
      std::sort(grid.begin(), grid.end());
    } else {
      std::sort(grid.begin(), grid.end(), std::greater<>());
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.push_back(to);

    double s0 = from;
    Complex v0 = values.front();
    for (double s1 : grid) {
      const Complex v1 = checked(unit_value, s1);
      refiner.refine(s0, v0, s1, v1, 0);
      s0 = s1;
      v0 = v1;
    }
  }
  path.phase = unwrap_phase(values, anchor);
  return path;
}

}  // namespace reslab
