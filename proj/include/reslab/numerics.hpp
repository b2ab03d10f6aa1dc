#pragma once

// Small deterministic numerical kernels: polynomial roots, eigenvalues of
// small complex matrices, phase unwrapping, Stieltjes quadrature and
// boundary-value extrapolation.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace reslab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Polynomial with complex coefficients, ascending degree. Trailing zeros
/// are trimmed on construction; the degree must stay >= 1.
class ComplexPolynomial {
 public:
  explicit ComplexPolynomial(std::vector<Complex> coefficients);

  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
  Complex leading() const noexcept { return coefficients_.back(); }

  Complex operator()(Complex x) const;
  /// Value and first derivative by Horner.
  std::pair<Complex, Complex> eval_with_derivative(Complex x) const;

  /// Rebuilds leading * prod(x - root).
  static ComplexPolynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

 private:
  std::vector<Complex> coefficients_;
};

/// All roots of `p`, counted with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration. Throws RootFindingError if the iteration cap is reached and the
/// iterate does not reproduce the coefficients.
std::vector<Complex> poly_roots(const ComplexPolynomial& p);

/// Groups of indices into `roots` that are numerically one multiple root: a
/// group of size m is accepted while its radius about the centroid stays below
/// (1e3 eps)^(1/m) * scale, the spread a multiplicity-m root picks up from
/// rounding. Singletons are included.
std::vector<std::vector<std::size_t>> multiple_root_clusters(std::span<const Complex> roots, double scale);

/// Max coefficient mismatch between `p` and its reconstruction from `roots`,
/// relative to the largest coefficient of `p`.
double reconstruction_error(const ComplexPolynomial& p, std::span<const Complex> roots);

struct EigenvalueResult {
  std::vector<Complex> values;
  // clustered[i] is set when values[i] belongs to an ill-conditioned cluster
  // of nearly repeated roots; such values are the cluster centroid.
  std::vector<bool> clustered;
};

/// det(x I - M) as a monic polynomial (Hessenberg recurrence).
ComplexPolynomial characteristic_polynomial(const ComplexMatrix& m);

/// Eigenvalues of a k x k matrix, 1 <= k <= 16, via the characteristic
/// polynomial and one Newton step on det(M - a I) per simple root.
EigenvalueResult small_eigenvalues(const ComplexMatrix& m);

struct PhaseSamples {
  std::vector<double> arguments;
  std::vector<Complex> source_points;
};

/// Continuous branch of arg through unit-modulus points, starting at `anchor`.
/// A principal increment larger than pi/2 between neighbours throws
/// RefinementNeeded naming the later index.
PhaseSamples unwrap_phase(std::span<const Complex> points, double anchor);

struct PhasePath {
  std::vector<double> nodes;  // ordered from `from` to `to`
  PhaseSamples phase;
};

/// Samples a unit-modulus function of a real variable on a grid refined by
/// halving until every increment is below pi/4 and each split is consistent
/// with its parent, then unwraps it from `anchor`. A single node when
/// from == to. `breakpoints` strictly between the ends join the starting grid;
/// callers use them to seed scales the uniform grid would alias (a whole
/// turn hidden inside one coarse interval is invisible to the midpoint test).
PhasePath adaptive_phase_path(const std::function<Complex(double)>& unit_value, double from,
                              double to, double anchor, int initial_intervals = 16,
                              std::span<const double> breakpoints = {});

/// Density on [lower, upper]; either end may be infinite.
struct Density {
  std::function<double(double)> value;
  double lower;
  double upper;
};

struct QuadratureOptions {
  double abs_tolerance = 1e-11;
  int max_panels = 20000;
};

/// Integral of weight(t) / (t - z) over the support, adaptive Gauss-Kronrod
/// (7/15) bisection. Infinite ends are mapped through t = c + tan(u).
Complex adaptive_stieltjes(const Density& weight, Complex z, const QuadratureOptions& opts = {});

struct ExtrapolationResult {
  Complex value;
  double error_estimate;
};

struct ExtrapolationSchedule {
  double y0 = 1e-2;
  int levels = 20;  // samples y_k = y0 * 2^-k, k = 0..levels
};

/// Limit of f(y) as y -> 0+ by second-order Richardson extrapolation over a
/// halving sequence. Throws Error(kDivergent) if the estimates grow.
ExtrapolationResult boundary_extrapolate(const std::function<Complex(double)>& f,
                                         const ExtrapolationSchedule& schedule = {});

}  // namespace reslab
