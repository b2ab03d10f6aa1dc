#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "reslab/errors.hpp"
#include "reslab/rank_one.hpp"

namespace reslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDenominatorFloor = 1e-13;

struct Segment {
  std::vector<double> nodes;
  std::vector<double> theta;
};

// alpha and alpha +- |beta| 2^j: the whole turn of the phase happens within a
// few widths of alpha, which a coarse uniform grid over a long range can skip.
std::vector<double> resonance_breakpoints(Complex fp, double lo, double hi) {
  std::vector<double> out;
  if (fp == Complex{0.0, 0.0}) return out;
  const Complex r = -1.0 / fp;
  const double width = std::abs(r.imag());
  if (!(width > 0.0)) return out;
  out.push_back(r.real());
  const double reach = std::max(std::abs(hi - r.real()), std::abs(lo - r.real()));
  for (double d = width / 16.0; d < reach; d *= 2.0) {
    out.push_back(r.real() - d);
    out.push_back(r.real() + d);
  }
  return out;
}

// Continuous phase of S along [from, to] starting at `anchor`. A real
// resonance strictly inside is stepped over with its principal jump.
Segment transport(Complex fp, const std::optional<ResonancePoint>& real_pole, double from,
                  double to, double anchor) {
  auto unit = [fp](double r) { return scattering_eigenvalue_from_boundary(fp, r); };
  const auto hints = resonance_breakpoints(fp, std::min(from, to), std::max(from, to));
  Segment out;
  auto append = [&](const PhasePath& path, bool skip_first) {
    for (std::size_t i = skip_first ? 1 : 0; i < path.nodes.size(); ++i) {
      out.nodes.push_back(path.nodes[i]);
      out.theta.push_back(path.phase.arguments[i]);
    }
  };
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  if (real_pole && real_pole->alpha > lo && real_pole->alpha < hi) {
    const double alpha = real_pole->alpha;
    const double gap = 1e-9 * (1.0 + std::abs(alpha));
    const double dir = to > from ? 1.0 : -1.0;
    const double before = alpha - dir * gap;
    const double after = alpha + dir * gap;
    const auto first = adaptive_phase_path(unit, from, before, anchor, 16, hints);
    append(first, false);
    const double jump = std::arg(unit(after) / unit(before));
    const auto second = adaptive_phase_path(unit, after, to, out.theta.back() + jump, 16, hints);
    append(second, false);
    return out;
  }
  append(adaptive_phase_path(unit, from, to, anchor, 16, hints), false);
  return out;
}

void reverse(Segment& s) {
  std::reverse(s.nodes.begin(), s.nodes.end());
  std::reverse(s.theta.begin(), s.theta.end());
}

}  // namespace

ResonancePoint ResonancePoint::from(Complex r, int multiplicity) {
  ResonancePoint rp;
  rp.value = r;
  rp.alpha = r.real();
  rp.beta = r.imag();
  rp.multiplicity = multiplicity;
  rp.is_real = std::abs(rp.beta) <= kRealResonanceThreshold * (1.0 + std::abs(rp.alpha));
  return rp;
}

ResonancePoint resonance_point_from_boundary(Complex fp) {
  if (fp == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::kNoFiniteResonance,
                "F(lambda + i0) = 0: the resonance point escaped to infinity");
  }
  const Complex r = -1.0 / fp;
  // (s - r)^-1 must be the eigenvalue F / (1 + sF) of the resolvent product.
  for (double s : {0.0, 1.0, -2.0}) {
    if (std::abs(s - r) < 1e-6 * (1.0 + std::abs(r))) continue;
    const Complex lhs = fp / (1.0 + s * fp);
    const Complex rhs = 1.0 / (s - r);
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) {
      throw Error(ErrorCode::kConsistency, "resonance point fails the eigenvalue identity");
    }
  }
  return ResonancePoint::from(r);
}

ResonancePoint resonance_point(const ScalarHerglotzModel& model, double lambda, BoundarySide side) {
  return resonance_point_from_boundary(eval_boundary_scalar(model, lambda, side));
}

Complex scattering_eigenvalue_from_boundary(Complex fp, double r) {
  const Complex den = 1.0 + r * fp;
  if (std::abs(den) < kDenominatorFloor) {
    throw Error(ErrorCode::kRealResonance, "coupling sits on a real resonance point");
  }
  return (1.0 + r * std::conj(fp)) / den;
}

Complex scattering_eigenvalue(const ScalarHerglotzModel& model, double lambda, double r) {
  return scattering_eigenvalue_from_boundary(eval_boundary_scalar(model, lambda), r);
}

Complex continued_scattering_eigenvalue(Complex fp, Complex s) {
  return (1.0 + s * std::conj(fp)) / (1.0 + s * fp);
}

PhaseTrace phase_trace(const ScalarHerglotzModel& model, double lambda, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw Error(ErrorCode::kInvalidArgument, "phase_trace needs finite a <= b");
  }
  const Complex fp = eval_boundary_scalar(model, lambda);
  std::optional<ResonancePoint> real_pole;
  if (fp != Complex{0.0, 0.0}) {
    const auto rp = resonance_point_from_boundary(fp);
    if (rp.is_real) {
      if (rp.alpha >= a && rp.alpha <= b) throw SplitRequired(rp.alpha);
      real_pole = rp;
    }
  }

  Segment merged;
  if (a <= 0.0 && 0.0 <= b) {
    Segment left = transport(fp, real_pole, 0.0, a, 0.0);
    reverse(left);
    const Segment right = transport(fp, real_pole, 0.0, b, 0.0);
    merged = std::move(left);
    merged.nodes.insert(merged.nodes.end(), right.nodes.begin() + 1, right.nodes.end());
    merged.theta.insert(merged.theta.end(), right.theta.begin() + 1, right.theta.end());
  } else if (a > 0.0) {
    const Segment lead = transport(fp, real_pole, 0.0, a, 0.0);
    merged = transport(fp, real_pole, a, b, lead.theta.back());
  } else {
    const Segment lead = transport(fp, real_pole, 0.0, b, 0.0);
    merged = transport(fp, real_pole, b, a, lead.theta.back());
    reverse(merged);
  }

  PhaseTrace trace;
  trace.lambda = lambda;
  trace.grid = std::move(merged.nodes);
  trace.theta = std::move(merged.theta);
  return trace;
}

double phase_derivative(const ResonancePoint& rp, double r) {
  if (rp.is_real) {
    if (r == rp.alpha) throw Error(ErrorCode::kRealResonance, "Lorentzian is singular at a real resonance");
    return 0.0;
  }
  const double d = r - rp.alpha;
  return -2.0 * rp.beta / (d * d + rp.beta * rp.beta);
}

double fd_phase_derivative(const ScalarHerglotzModel& model, double lambda, double r, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be positive");
  const auto trace = phase_trace(model, lambda, r - h, r + h);
  return (trace.back() - trace.front()) / (2.0 * h);
}

double fd_phase_derivative_richardson(const ScalarHerglotzModel& model, double lambda, double r,
                                      double h) {
  const double coarse = fd_phase_derivative(model, lambda, r, h);
  const double fine = fd_phase_derivative(model, lambda, r, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

BreitWignerResult breit_wigner_check(const ScalarHerglotzModel& model, double lambda, double h,
                                     double tolerance) {
  BreitWignerResult out;
  out.resonance = resonance_point(model, lambda);
  if (out.resonance.is_real) {
    throw Error(ErrorCode::kRealResonance, "Breit-Wigner check needs a non-real resonance point");
  }
  const double alpha = out.resonance.alpha;
  const double beta = out.resonance.beta;
  out.target = -2.0 / beta;
  out.bound = (2.0 / 3.0) / std::pow(std::abs(beta), 3) * h * h;
  out.derivative = fd_phase_derivative(model, lambda, alpha, h);
  out.residual = std::abs(out.derivative - out.target);
  out.used_richardson = false;
  if (out.residual > tolerance) {
    out.derivative = fd_phase_derivative_richardson(model, lambda, alpha, h);
    out.residual = std::abs(out.derivative - out.target);
    out.used_richardson = true;
  }
  return out;
}

double trace_identity_check(const ScalarHerglotzModel& model, double lambda, double r) {
  const Complex fp = eval_boundary_scalar(model, lambda);
  const Complex den = 1.0 + r * fp;
  if (std::abs(den) < kDenominatorFloor) {
    throw Error(ErrorCode::kRealResonance, "trace identity is singular at a real resonance");
  }
  const double trace_side = -2.0 * (fp / den).imag();
  if (fp == Complex{0.0, 0.0}) return std::abs(trace_side);
  return std::abs(phase_derivative(resonance_point_from_boundary(fp), r) - trace_side);
}

double total_phase_variation(const ScalarHerglotzModel& model, double lambda) {
  const Complex fp = eval_boundary_scalar(model, lambda);
  if (fp == Complex{0.0, 0.0}) return 0.0;
  const auto rp = resonance_point_from_boundary(fp);
  if (rp.is_real) return 0.0;
  return -2.0 * kPi * (rp.beta > 0.0 ? 1.0 : -1.0);
}

double ssf_ac(const ScalarHerglotzModel& model, double lambda, double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw Error(ErrorCode::kInvalidArgument, "coupling bounds are NaN");
  if (a == b) return 0.0;
  const Complex fp = eval_boundary_scalar(model, lambda);
  if (fp == Complex{0.0, 0.0}) return 0.0;
  const auto rp = resonance_point_from_boundary(fp);
  if (rp.is_real) {
    if (rp.alpha >= std::min(a, b) && rp.alpha <= std::max(a, b)) throw SplitRequired(rp.alpha);
    return 0.0;
  }
  const double width = std::abs(rp.beta);
  const double sign = rp.beta > 0.0 ? 1.0 : -1.0;
  return sign * (std::atan((b - rp.alpha) / width) - std::atan((a - rp.alpha) / width)) / kPi;
}

ContinuationReport continuation_pole_check(const ScalarHerglotzModel& model, double lambda,
                                           double radius, double pole_bound, double zero_bound) {
  constexpr int kSamples = 16;
  const Complex fp = eval_boundary_scalar(model, lambda);
  ContinuationReport report;
  report.resonance = resonance_point_from_boundary(fp);
  if (report.resonance.is_real) {
    throw Error(ErrorCode::kRealResonance, "continuation check needs a non-real resonance point");
  }
  const Complex r = report.resonance.value;
  report.min_near_pole = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const Complex offset = std::polar(radius, 2.0 * kPi * (i + 0.5) / kSamples);
    const double at_pole = std::abs(continued_scattering_eigenvalue(fp, r + offset));
    const double at_zero = std::abs(continued_scattering_eigenvalue(fp, std::conj(r) + offset));
    report.pole_moduli.push_back(at_pole);
    report.zero_moduli.push_back(at_zero);
    report.min_near_pole = std::min(report.min_near_pole, at_pole);
    report.max_near_zero = std::max(report.max_near_zero, at_zero);
  }
  for (double s : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, r.real()}) {
    const double modulus = std::abs(scattering_eigenvalue_from_boundary(fp, s));
    report.unitarity_defect = std::max(report.unitarity_defect, std::abs(modulus - 1.0));
  }
  report.passed = report.min_near_pole > pole_bound && report.max_near_zero < zero_bound &&
                  report.unitarity_defect <= 1e-12;
  return report;
}

}  // namespace reslab
