#pragma once

// Rank-one perturbations H_s = H0 + sV described through the boundary value
// F(lambda + i0): resonance points in the coupling constant, the scattering
// phase, its Lorentzian derivative and the spectral shift consequences.

#include <vector>

#include "reslab/herglotz.hpp"

namespace reslab {

/// Resonance point r = alpha + i beta in the coupling constant.
struct ResonancePoint {
  Complex value;
  double alpha = 0.0;
  double beta = 0.0;
  int multiplicity = 1;
  bool is_real = false;

  /// Fills alpha/beta and classifies |beta| <= 1e-10 (1 + |alpha|) as real.
  static ResonancePoint from(Complex r, int multiplicity = 1);
};

inline constexpr double kRealResonanceThreshold = 1e-10;

/// r = -1/F(lambda +- i0). Throws Error(kNoFiniteResonance) when F vanishes.
ResonancePoint resonance_point(const ScalarHerglotzModel& model, double lambda,
                               BoundarySide side = BoundarySide::kUpper);
ResonancePoint resonance_point_from_boundary(Complex boundary_value);

/// Unit-modulus eigenvalue (1 + r conj F+) / (1 + r F+) of S(lambda; H_r, H0).
Complex scattering_eigenvalue(const ScalarHerglotzModel& model, double lambda, double r);
Complex scattering_eigenvalue_from_boundary(Complex boundary_value, double r);
/// The same rational function continued to complex couplings.
Complex continued_scattering_eigenvalue(Complex boundary_value, Complex s);

/// Continuous branch theta_1(lambda, r) on [a, b], normalised by theta_1(lambda, 0) = 0.
struct PhaseTrace {
  double lambda = 0.0;
  std::vector<double> grid;
  std::vector<double> theta;

  double front() const { return theta.front(); }
  double back() const { return theta.back(); }
};

PhaseTrace phase_trace(const ScalarHerglotzModel& model, double lambda, double a, double b);

/// Closed-form Lorentzian -2 beta / ((r - alpha)^2 + beta^2).
double phase_derivative(const ResonancePoint& rp, double r);

/// Centered difference (theta(r + h) - theta(r - h)) / 2h read off phase_trace.
double fd_phase_derivative(const ScalarHerglotzModel& model, double lambda, double r, double h);
/// Richardson combination of the centered differences at h and h/2.
double fd_phase_derivative_richardson(const ScalarHerglotzModel& model, double lambda, double r,
                                      double h);

struct BreitWignerResult {
  ResonancePoint resonance;
  double derivative;  // finite-difference theta' at r = alpha
  double target;      // -2 / beta
  double residual;    // |derivative - target|
  double bound;       // C h^2 from the third-derivative bound (2/3) / |beta|^3
  bool used_richardson;
};

/// Finite-difference check of theta'(alpha) = -2 / beta. Falls back to the
/// h, h/2 Richardson combination when the plain residual exceeds `tolerance`.
BreitWignerResult breit_wigner_check(const ScalarHerglotzModel& model, double lambda,
                                     double h = 1e-4, double tolerance = 1e-6);

/// |Lorentzian - (-2 Im(F+ / (1 + r F+)))|.
double trace_identity_check(const ScalarHerglotzModel& model, double lambda, double r);

/// theta_1(lambda; +inf, -inf): -2 pi sign(beta), or 0 for a real resonance.
double total_phase_variation(const ScalarHerglotzModel& model, double lambda);

/// xi^(a)(lambda; H_b, H_a) from the Lorentzian antiderivative. Ends may be infinite.
double ssf_ac(const ScalarHerglotzModel& model, double lambda, double a, double b);

struct ContinuationReport {
  ResonancePoint resonance;
  std::vector<double> pole_moduli;  // |S| on the circle around r
  std::vector<double> zero_moduli;  // |S| on the circle around conj(r)
  double min_near_pole = 0.0;
  double max_near_zero = 0.0;
  double unitarity_defect = 0.0;  // max ||S| - 1| on real couplings
  bool passed = false;
};

/// Samples the continued eigenvalue on circles of `radius` around r and
/// conj(r): the modulus must exceed `pole_bound` near r and stay below
/// `zero_bound` near conj(r).
ContinuationReport continuation_pole_check(const ScalarHerglotzModel& model, double lambda,
                                           double radius = 1e-4, double pole_bound = 1e3,
                                           double zero_bound = 1e-3);

}  // namespace reslab
