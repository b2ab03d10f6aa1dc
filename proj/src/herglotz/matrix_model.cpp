#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "reslab/errors.hpp"
#include "reslab/herglotz.hpp"

namespace reslab {

namespace {

constexpr int kMaxRank = 8;

void invalid(const std::string& message) { throw Error(ErrorCode::kInvalidArgument, message); }

}  // namespace

MatrixHerglotzModel::MatrixHerglotzModel(std::vector<int> signature, std::vector<Term> terms)
    : signature_(std::move(signature)), terms_(std::move(terms)) {
  const auto k = static_cast<Eigen::Index>(signature_.size());
  if (k < 1 || k > kMaxRank) invalid("matrix model dimension must satisfy 1 <= k <= 8");
  for (int s : signature_) {
    if (s != 1 && s != -1) invalid("signature entries must be ±1");
  }
  if (terms_.empty()) invalid("matrix model needs at least one term");
  for (std::size_t m = 0; m < terms_.size(); ++m) {
    const auto& c = terms_[m].weight;
    const std::string where = "term " + std::to_string(m) + ": ";
    if (c.rows() != k || c.cols() != k) invalid(where + "C must be k x k");
    if (!c.allFinite()) invalid(where + "C entries must be finite");
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) invalid(where + "C must be Hermitian");
    const ComplexMatrix herm = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
      invalid(where + "C must be positive semidefinite");
    }
  }
}

bool MatrixHerglotzModel::is_excluded(double lambda) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.model.is_excluded(lambda); });
}

std::optional<ScalarHerglotzModel> MatrixHerglotzModel::as_rank_one() const {
  if (dimension() != 1 || signature_[0] != 1) return std::nullopt;
  std::vector<ScalarHerglotzModel::Term> parts;
  for (const auto& t : terms_) {
    const double w = t.weight(0, 0).real();
    if (w > 0.0) parts.push_back({w, t.model});
  }
  if (parts.empty()) return std::nullopt;
  if (parts.size() == 1 && parts[0].weight == 1.0) return parts[0].model;
  return ScalarHerglotzModel::combination(std::move(parts));
}

MatrixHerglotzModel MatrixHerglotzModel::from_scalar(const ScalarHerglotzModel& model, int sign) {
  return MatrixHerglotzModel({sign}, {Term{ComplexMatrix::Identity(1, 1), model}});
}

ComplexMatrix eval_matrix_unsigned(const MatrixHerglotzModel& model, Complex z) {
  const auto k = model.dimension();
  ComplexMatrix acc = ComplexMatrix::Zero(k, k);
  for (const auto& t : model.terms()) acc += t.weight * eval_scalar(t.model, z);
  return acc;
}

namespace {
ComplexMatrix apply_signature(const MatrixHerglotzModel& model, ComplexMatrix m) {
  for (int i = 0; i < model.dimension(); ++i) {
    if (model.signature()[i] < 0) m.row(i) *= -1.0;
  }
  return m;
}
}  // namespace

ComplexMatrix eval_matrix(const MatrixHerglotzModel& model, Complex z) {
  return apply_signature(model, eval_matrix_unsigned(model, z));
}

ComplexMatrix eval_matrix_boundary(const MatrixHerglotzModel& model, double lambda,
                                   BoundarySide side) {
  const auto k = model.dimension();
  ComplexMatrix acc = ComplexMatrix::Zero(k, k);
  for (const auto& t : model.terms()) acc += t.weight * eval_boundary_scalar(t.model, lambda, side);
  return apply_signature(model, std::move(acc));
}

}  // namespace reslab
