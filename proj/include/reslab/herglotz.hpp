#pragma once

// Scalar and matrix-valued Herglotz functions F(z) = integral dmu(t) / (t - z)
// standing in for the boundary data of H0 and the perturbation.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reslab/numerics.hpp"

namespace reslab {

enum class BoundarySide { kUpper, kLower };

/// Immutable Stieltjes transform of a finite positive measure drawn from a
/// small catalog. Continuous variants carry total mass `mass` (default 1).
class ScalarHerglotzModel {
 public:
  struct Cauchy {
    double center;
    double scale;
    double mass;
  };
  struct Semicircle {
    double halfwidth;
    double mass;
  };
  struct Uniform {
    double a;
    double b;
    double mass;
  };
  struct PointMass {
    double position;
    double weight;
  };
  struct PointMasses {
    std::vector<PointMass> masses;
  };
  struct Term;
  struct Combination {
    std::vector<Term> terms;
  };
  using Variant = std::variant<Cauchy, Semicircle, Uniform, PointMasses, Combination>;

  static ScalarHerglotzModel cauchy(double center, double scale, double mass = 1.0);
  static ScalarHerglotzModel semicircle(double halfwidth, double mass = 1.0);
  static ScalarHerglotzModel uniform(double a, double b, double mass = 1.0);
  static ScalarHerglotzModel point_masses(std::vector<PointMass> masses);
  static ScalarHerglotzModel combination(std::vector<Term> terms);

  const Variant& variant() const noexcept { return variant_; }
  double total_mass() const;
  std::string describe() const;

  /// Atom positions and interval endpoints: the points where the boundary
  /// value is not defined.
  std::vector<double> excluded_points() const;
  bool is_excluded(double lambda) const;

 private:
  explicit ScalarHerglotzModel(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

struct ScalarHerglotzModel::Term {
  double weight;
  ScalarHerglotzModel model;
};

/// F(z) in closed form. Requires Im z != 0, or z real outside the support.
Complex eval_scalar(const ScalarHerglotzModel& model, Complex z);

/// F(lambda + i0) (or lambda - i0). Throws Error(kMeasureZeroPoint) at atoms and
/// interval endpoints.
Complex eval_boundary_scalar(const ScalarHerglotzModel& model, double lambda,
                             BoundarySide side = BoundarySide::kUpper);

/// Independent route to F(z): adaptive quadrature over each density plus direct
/// sums over atoms.
Complex stieltjes_oracle(const ScalarHerglotzModel& model, Complex z);

struct SelfCheckItem {
  Complex z;
  std::string property;  // "positivity", "conjugate_symmetry" or "oracle"
  double deviation;
  double bound;
  bool passed;  // deviation <= bound
};

struct SelfCheckReport {
  std::vector<SelfCheckItem> items;
  bool passed = true;
  double worst = 0.0;  // largest raw deviation seen across items
  std::vector<SelfCheckItem> failures() const;
};

SelfCheckReport herglotz_selfcheck(const ScalarHerglotzModel& model, std::span<const Complex> samples,
                                   double oracle_tolerance = 1e-8);

/// A(z) = J * sum_m C_m F_m(z) with J = diag(+-1) and Hermitian PSD C_m.
class MatrixHerglotzModel {
 public:
  struct Term {
    ComplexMatrix weight;  // C_m
    ScalarHerglotzModel model;
  };

  /// Validates dimensions (1 <= k <= 8), the signature and every C_m.
  MatrixHerglotzModel(std::vector<int> signature, std::vector<Term> terms);

  int dimension() const noexcept { return static_cast<int>(signature_.size()); }
  const std::vector<int>& signature() const noexcept { return signature_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_excluded(double lambda) const;

  /// The rank-one model behind a k = 1 problem with J = +1.
  std::optional<ScalarHerglotzModel> as_rank_one() const;
  static MatrixHerglotzModel from_scalar(const ScalarHerglotzModel& model, int sign = 1);

 private:
  std::vector<int> signature_;
  std::vector<Term> terms_;
};

/// sum_m C_m F_m(z), without the signature.
ComplexMatrix eval_matrix_unsigned(const MatrixHerglotzModel& model, Complex z);
ComplexMatrix eval_matrix(const MatrixHerglotzModel& model, Complex z);
ComplexMatrix eval_matrix_boundary(const MatrixHerglotzModel& model, double lambda,
                                   BoundarySide side = BoundarySide::kUpper);

}  // namespace reslab
