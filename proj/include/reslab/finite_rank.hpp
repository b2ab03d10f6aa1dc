#pragma once

// Finite-rank perturbations V = F* J F: resonance sets from the eigenvalues of
// A(lambda + i0), the phase sum rule, resonance indices and the spectral shift
// function split into absolutely continuous and singular parts.

#include <vector>

#include "reslab/herglotz.hpp"
#include "reslab/rank_one.hpp"

namespace reslab {

/// One entry per non-zero eigenvalue a_j of A, r_j = -1/a_j. Entries of a
/// cluster share the cluster's multiplicity.
struct ResonanceSet {
  std::vector<ResonancePoint> points;
  int dropped_at_infinity = 0;

  std::vector<ResonancePoint> real_points() const;
  std::vector<ResonancePoint> nonreal_points() const;
};

inline constexpr double kClusterTolerance = 1e-7;

ResonanceSet resonance_set_from_matrix(const ComplexMatrix& a);
ResonanceSet resonance_set(const MatrixHerglotzModel& model, double lambda);
/// Resonance set of A(z) off the real axis.
ResonanceSet resonance_set_at(const MatrixHerglotzModel& model, Complex z);

/// sum_j theta_j(lambda; b, a) as -2 times the unwrapped change of
/// arg det(1 + s A(lambda + i0)) from s = a to s = b (LU determinant).
double det_phase_sum(const MatrixHerglotzModel& model, double lambda, double a, double b);

/// -sum_j int_a^b 2 beta_j / ((s - alpha_j)^2 + beta_j^2) ds in closed form;
/// real points contribute nothing. Ends may be infinite.
double lorentzian_sum_integral(const ResonanceSet& rs, double a, double b);

struct Eq2Result {
  double phase_sum;   // determinant route
  double lorentzian;  // eigenvalue route
  double residual;
};

Eq2Result eq2_check(const MatrixHerglotzModel& model, double lambda, double a, double b);

struct IndexCounts {
  double y;
  int upper;
  int lower;
};

struct IndexResult {
  int index;
  std::vector<IndexCounts> levels;
};

/// N+ - N-: resonance points of lambda + iy inside a disc of radius
/// 10 sqrt(y) (1 + |r|) around r_real, split by the sign of their imaginary
/// part, for y = 1e-2, 1e-3, 1e-4. The two finest levels must agree.
IndexResult resonance_index_detail(const MatrixHerglotzModel& model, double lambda, double r_real);
int resonance_index(const MatrixHerglotzModel& model, double lambda, double r_real);

struct SsfDecomposition {
  double xi_ac = 0.0;
  int xi_singular = 0;
  double xi_total = 0.0;
  struct Contribution {
    double r;
    int index;
  };
  std::vector<Contribution> contributing_real_points;
};

/// xi(lambda; H_b, H_a) = xi^(a) + xi^(s) for a <= b.
SsfDecomposition ssf_total(const MatrixHerglotzModel& model, double lambda, double a, double b);

}  // namespace reslab
