#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

namespace {

constexpr int kMaxDimension = 16;

using Coeffs = std::vector<Complex>;

// a(x) * (x - c), ascending coefficients
Coeffs times_linear(const Coeffs& a, Complex c) {
  Coeffs out(a.size() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i + 1] += a[i];
    out[i] -= c * a[i];
  }
  return out;
}

Complex det_shifted(const ComplexMatrix& m, Complex a) {
  ComplexMatrix shifted = m;
  shifted.diagonal().array() -= a;
  return shifted.partialPivLu().determinant();
}

Complex newton_step(const ComplexMatrix& m, Complex a) {
  ComplexMatrix shifted = m;
  shifted.diagonal().array() -= a;
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
  const Complex det = lu.determinant();
  if (det == Complex{0.0, 0.0}) return a;
  // d/da det(M - aI) = -det * tr((M - aI)^-1)
  const Complex trace_inv = lu.inverse().trace();
  if (trace_inv == Complex{0.0, 0.0}) return a;
  return a + 1.0 / trace_inv;
}

}  // namespace

ComplexPolynomial characteristic_polynomial(const ComplexMatrix& m) {
  const auto n = m.rows();
  if (n != m.cols() || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "characteristic polynomial needs a square matrix");
  }
  if (n == 1) return ComplexPolynomial({-m(0, 0), 1.0});

  const ComplexMatrix h = Eigen::HessenbergDecomposition<ComplexMatrix>(m).matrixH();

  // p[j] = det(x I - H[0..j, 0..j]); p[0] = 1.
  std::vector<Coeffs> p(n + 1);
  p[0] = {1.0};
  for (Eigen::Index j = 1; j <= n; ++j) {
    Coeffs next = times_linear(p[j - 1], h(j - 1, j - 1));
    Complex sub_product = 1.0;
    for (Eigen::Index i = j - 1; i >= 1; --i) {
      sub_product *= h(i, i - 1);
      const Complex factor = h(i - 1, j - 1) * sub_product;
      for (std::size_t c = 0; c < p[i - 1].size(); ++c) next[c] -= factor * p[i - 1][c];
    }
    p[j] = std::move(next);
  }
  return ComplexPolynomial(std::move(p[n]));
}

EigenvalueResult small_eigenvalues(const ComplexMatrix& m) {
  const auto n = m.rows();
  if (n != m.cols() || n < 1 || n > kMaxDimension) {
    throw Error(ErrorCode::kInvalidArgument, "small_eigenvalues supports square matrices, 1 <= k <= 16");
  }
  if (!m.allFinite()) throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const auto poly = characteristic_polynomial(m);
  std::vector<Complex> roots = poly_roots(poly);

  const auto k = roots.size();
  EigenvalueResult out;
  out.values.resize(k);
  out.clustered.assign(k, false);
  for (const auto& group : multiple_root_clusters(roots, scale)) {
    if (group.size() > 1) {
      // The centroid of a multiple root is far better conditioned than its members.
      Complex mean = 0.0;
      for (auto j : group) mean += roots[j];
      mean /= static_cast<double>(group.size());
      for (auto j : group) {
        out.values[j] = mean;
        out.clustered[j] = true;
      }
      continue;
    }
    const std::size_t i = group.front();
    const Complex refined = newton_step(m, roots[i]);
    out.values[i] = std::abs(det_shifted(m, refined)) < std::abs(det_shifted(m, roots[i]))
                        ? refined
                        : roots[i];
  }
  return out;
}

}  // namespace reslab
