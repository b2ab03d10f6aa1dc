#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

namespace {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half) and weights.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  Complex value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel integrate_panel(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex kronrod = kKronrod[7] * f(center);
  Complex gauss = kGauss[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const Complex sum = f(center - dx) + f(center + dx);
    kronrod += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Complex adaptive_stieltjes(const Density& weight, Complex z, const QuadratureOptions& opts) {
  if (!(weight.lower < weight.upper)) {
    throw Error(ErrorCode::kInvalidArgument, "density support must satisfy lower < upper");
  }
  if (z.imag() == 0.0 && z.real() >= weight.lower && z.real() <= weight.upper) {
    throw Error(ErrorCode::kBoundaryEvaluationRequired,
                "Stieltjes transform requested on the real support");
  }

  const bool lower_inf = std::isinf(weight.lower);
  const bool upper_inf = std::isinf(weight.upper);
  constexpr double kHalfPi = std::numbers::pi / 2;

  // Integration variable u and the map t(u); finite supports integrate in t.
  double u0 = weight.lower;
  double u1 = weight.upper;
  double shift = 0.0;
  if (lower_inf && upper_inf) {
    u0 = -kHalfPi;
    u1 = kHalfPi;
  } else if (upper_inf) {
    shift = weight.lower;
    u0 = 0.0;
    u1 = kHalfPi;
  } else if (lower_inf) {
    shift = weight.upper;
    u0 = -kHalfPi;
    u1 = 0.0;
  }
  const bool mapped = lower_inf || upper_inf;

  auto integrand = [&](double u) -> Complex {
    double t = u;
    double jacobian = 1.0;
    if (mapped) {
      const double c = std::cos(u);
      t = shift + std::tan(u);
      jacobian = 1.0 / (c * c);
    }
    if (!std::isfinite(t) || !std::isfinite(jacobian)) return 0.0;
    const double w = weight.value(t) * jacobian;
    if (w == 0.0) return 0.0;
    return w / (t - z);
  };

  std::priority_queue<Panel> panels;
  Complex total = 0.0;
  double total_error = 0.0;
  {
    // Fixed initial schedule of 8 equal panels.
    constexpr int kInitial = 8;
    const double width = (u1 - u0) / kInitial;
    for (int i = 0; i < kInitial; ++i) {
      const double a = u0 + i * width;
      const double b = i + 1 == kInitial ? u1 : u0 + (i + 1) * width;
      Panel p = integrate_panel(integrand, a, b);
      total += p.value;
      total_error += p.error;
      panels.push(p);
    }
  }

  int count = static_cast<int>(panels.size());
  while (total_error > opts.abs_tolerance) {
    if (count >= opts.max_panels) throw QuadratureBudgetError(total, total_error, count);
    Panel worst = panels.top();
    if (worst.error <= 0.0) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Panel cannot be split further in double precision; accept it.
      total_error -= worst.error;
      worst.error = 0.0;
      panels.push(worst);
      continue;
    }
    Panel left = integrate_panel(integrand, worst.a, mid);
    Panel right = integrate_panel(integrand, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // Re-sum to shed the drift from incremental updates.
  Complex sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    panels.pop();
  }
  return sum;
}

}  // namespace reslab
