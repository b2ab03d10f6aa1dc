#include <algorithm>
#include <cmath>
#include <numbers>

#include "reslab/errors.hpp"
#include "reslab/finite_rank.hpp"

namespace reslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroEigenvalue = 1e-13;

bool same_point(double x, double y) { return std::abs(x - y) <= kClusterTolerance * (1.0 + std::abs(y)); }

void check_interval(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw Error(ErrorCode::kInvalidArgument, "coupling bounds are NaN");
}

// Distinct real resonance locations (clusters collapsed).
std::vector<double> distinct_real(const ResonanceSet& rs) {
  std::vector<double> out;
  for (const auto& p : rs.real_points()) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](double x) { return same_point(p.alpha, x); });
    if (!seen) out.push_back(p.alpha);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ResonancePoint> ResonanceSet::real_points() const {
  std::vector<ResonancePoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out), [](const auto& p) { return p.is_real; });
  return out;
}

std::vector<ResonancePoint> ResonanceSet::nonreal_points() const {
  std::vector<ResonancePoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out), [](const auto& p) { return !p.is_real; });
  return out;
}

ResonanceSet resonance_set_from_matrix(const ComplexMatrix& a) {
  const auto eig = small_eigenvalues(a);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  ResonanceSet rs;
  std::vector<Complex> poles;
  for (const auto& value : eig.values) {
    if (std::abs(value) <= kZeroEigenvalue * scale) {
      ++rs.dropped_at_infinity;
      continue;
    }
    poles.push_back(-1.0 / value);
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    int multiplicity = 0;
    for (const auto& q : poles) {
      if (std::abs(poles[i] - q) <= kClusterTolerance * (1.0 + std::abs(poles[i]))) ++multiplicity;
    }
    rs.points.push_back(ResonancePoint::from(poles[i], multiplicity));
  }
  return rs;
}

ResonanceSet resonance_set(const MatrixHerglotzModel& model, double lambda) {
  return resonance_set_from_matrix(eval_matrix_boundary(model, lambda));
}

ResonanceSet resonance_set_at(const MatrixHerglotzModel& model, Complex z) {
  return resonance_set_from_matrix(eval_matrix(model, z));
}

double det_phase_sum(const MatrixHerglotzModel& model, double lambda, double a, double b) {
  check_interval(a, b);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument, "det_phase_sum needs a finite coupling interval");
  }
  if (a == b) return 0.0;
  const ComplexMatrix boundary = eval_matrix_boundary(model, lambda);
  for (double r : distinct_real(resonance_set_from_matrix(boundary))) {
    if (r >= std::min(a, b) && r <= std::max(a, b)) throw SplitRequired(r);
  }
  const auto k = boundary.rows();
  auto unit_det = [&](double s) -> Complex {
    const ComplexMatrix m = ComplexMatrix::Identity(k, k) + s * boundary;
    const Complex d = m.partialPivLu().determinant();
    const double modulus = std::abs(d);
    if (modulus == 0.0) return {std::nan(""), 0.0};
    return d / modulus;
  };
  const auto path = adaptive_phase_path(unit_det, a, b, 0.0);
  return -2.0 * (path.phase.arguments.back() - path.phase.arguments.front());
}

double lorentzian_sum_integral(const ResonanceSet& rs, double a, double b) {
  check_interval(a, b);
  double acc = 0.0;
  for (const auto& p : rs.points) {
    if (p.is_real) continue;
    const double width = std::abs(p.beta);
    const double sign = p.beta > 0.0 ? 1.0 : -1.0;
    acc -= 2.0 * sign * (std::atan((b - p.alpha) / width) - std::atan((a - p.alpha) / width));
  }
  return acc;
}

Eq2Result eq2_check(const MatrixHerglotzModel& model, double lambda, double a, double b) {
  Eq2Result out;
  out.phase_sum = det_phase_sum(model, lambda, a, b);
  out.lorentzian = lorentzian_sum_integral(resonance_set(model, lambda), a, b);
  out.residual = std::abs(out.phase_sum - out.lorentzian);
  return out;
}

IndexResult resonance_index_detail(const MatrixHerglotzModel& model, double lambda, double r_real) {
  const auto at_boundary = resonance_set(model, lambda);
  const auto real = distinct_real(at_boundary);
  if (std::none_of(real.begin(), real.end(), [&](double x) { return same_point(r_real, x); })) {
    throw Error(ErrorCode::kNotAResonance, "coupling is not a real resonance point at this energy");
  }

  IndexResult out;
  for (double y : {1e-2, 1e-3, 1e-4}) {
    const double radius = 10.0 * std::sqrt(y) * (1.0 + std::abs(r_real));
    IndexCounts counts{y, 0, 0};
    for (const auto& p : resonance_set_at(model, Complex{lambda, y}).points) {
      if (std::abs(p.value - r_real) > radius) continue;
      if (p.beta > 0.0) ++counts.upper;
      if (p.beta < 0.0) ++counts.lower;
    }
    out.levels.push_back(counts);
  }
  const auto& coarse = out.levels[1];
  const auto& fine = out.levels[2];
  if (fine.upper + fine.lower == 0) {
    throw Error(ErrorCode::kNotAResonance, "no resonance points approach the real point");
  }
  const int previous = coarse.upper - coarse.lower;
  out.index = fine.upper - fine.lower;
  if (previous != out.index) {
    throw Error(ErrorCode::kUnstableIndex, "resonance index unstable: " + std::to_string(previous) +
                                               " at y=1e-3 vs " + std::to_string(out.index) +
                                               " at y=1e-4");
  }
  return out;
}

int resonance_index(const MatrixHerglotzModel& model, double lambda, double r_real) {
  return resonance_index_detail(model, lambda, r_real).index;
}

SsfDecomposition ssf_total(const MatrixHerglotzModel& model, double lambda, double a, double b) {
  check_interval(a, b);
  if (a > b) throw Error(ErrorCode::kInvalidArgument, "ssf_total needs a <= b");
  SsfDecomposition out;
  if (a == b) return out;
  const auto rs = resonance_set(model, lambda);
  out.xi_ac = -lorentzian_sum_integral(rs, a, b) / (2.0 * kPi) + 0.0;  // no negative zero
  for (double r : distinct_real(rs)) {
    if (same_point(r, a) || same_point(r, b)) {
      throw Error(ErrorCode::kEndpointAmbiguity, "real resonance point at an end of the coupling interval");
    }
    if (r > a && r < b) {
      const int index = resonance_index(model, lambda, r);
      out.contributing_real_points.push_back({r, index});
      out.xi_singular += index;
    }
  }
  out.xi_total = out.xi_ac + out.xi_singular;
  return out;
}

}  // namespace reslab
