#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reslab/errors.hpp"
#include "reslab/finite_rank.hpp"
#include "reslab/lab/corpus.hpp"

using namespace reslab;
using M = ScalarHerglotzModel;
using oracle::kPi;

namespace {

const Complex I{0.0, 1.0};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kConsistency;
}

ComplexMatrix unit(int k, int i) {
  ComplexMatrix e = ComplexMatrix::Zero(k, k);
  e(i, i) = 1.0;
  return e;
}

MatrixHerglotzModel diag_model(std::vector<int> sig, const M& first, const M& second) {
  return MatrixHerglotzModel(std::move(sig), {{unit(2, 0), first}, {unit(2, 1), second}});
}

MatrixHerglotzModel eq2_example() {
  ComplexMatrix c1(2, 2), c2(2, 2);
  c1 << 1.0, 0.3, 0.3, 0.5;
  c2 << 0.5, 0.0, 0.0, 1.0;
  return MatrixHerglotzModel({1, 1}, {{c1, M::cauchy(0, 1)}, {c2, M::semicircle(2)}});
}

std::vector<Complex> values(const ResonanceSet& rs) {
  std::vector<Complex> out;
  for (const auto& p : rs.points) out.push_back(p.value);
  return out;
}

}  // namespace

TEST_CASE("resonance_set: worked examples") {
  const auto k1 = MatrixHerglotzModel::from_scalar(M::cauchy(0, 1));
  const auto r1 = resonance_set(k1, 0.0);
  REQUIRE(r1.points.size() == 1);
  CHECK(std::abs(r1.points[0].value - resonance_point(M::cauchy(0, 1), 0.0).value) <= 1e-12);
  CHECK(std::abs(r1.points[0].value - I) <= 1e-12);

  const auto r2 = resonance_set(diag_model({1, 1}, M::cauchy(0, 1), M::semicircle(2)), 0.0);
  CHECK(oracle::multiset_distance(values(r2), {I, I}) < 1e-12);
  CHECK(r2.points[0].multiplicity == 2);
  CHECK(r2.dropped_at_infinity == 0);

  const MatrixHerglotzModel partial({1, 1}, {{unit(2, 0), M::cauchy(0, 1)}});
  const auto r3 = resonance_set(partial, 0.0);
  REQUIRE(r3.points.size() == 1);
  CHECK(std::abs(r3.points[0].value - I) < 1e-12);
  CHECK(r3.dropped_at_infinity == 1);
}

TEST_CASE("resonance_set: triple multiplicity") {
  const MatrixHerglotzModel m({1, 1, 1}, {{ComplexMatrix::Identity(3, 3), M::cauchy(0, 1)}});
  const auto rs = resonance_set(m, 0.0);
  REQUIRE(rs.points.size() == 3);
  for (const auto& p : rs.points) {
    CHECK(p.multiplicity == 3);
    CHECK(std::abs(p.value - I) < 1e-14);
  }
  CHECK(det_phase_sum(m, 0.0, 0.0, 1.0) == doctest::Approx(-1.5 * kPi).epsilon(1e-12));
  CHECK(eq2_check(m, 0.0, -2.0, 1.0).residual <= 1e-12);
}

TEST_CASE("resonance_set: excluded energy propagates") {
  const auto m = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  CHECK(code_of([&] { resonance_set(m, 1.0); }) == ErrorCode::kMeasureZeroPoint);
}

TEST_CASE("det_phase_sum: worked examples") {
  const auto k1 = MatrixHerglotzModel::from_scalar(M::cauchy(0, 1));
  CHECK(det_phase_sum(k1, 0.0, 0.0, 1.0) == doctest::Approx(-kPi / 2).epsilon(1e-12));
  CHECK(det_phase_sum(k1, 0.0, 0.4, 0.4) == 0.0);
  const auto cc = diag_model({1, 1}, M::cauchy(0, 1), M::cauchy(0, 1));
  CHECK(det_phase_sum(cc, 0.0, 0.0, 1.0) == doctest::Approx(-kPi).epsilon(1e-12));
}

TEST_CASE("det_phase_sum: rank-one agreement and split errors") {
  const auto scalar = M::semicircle(2);
  const auto m = MatrixHerglotzModel::from_scalar(scalar);
  const auto t = phase_trace(scalar, 1.0, -3.0, 4.0);
  CHECK(det_phase_sum(m, 1.0, -3.0, 4.0) == doctest::Approx(t.back() - t.front()).epsilon(1e-10));

  const auto u = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  CHECK(code_of([&] { det_phase_sum(u, 2.0, 0.0, 2.0); }) == ErrorCode::kSplitRequired);
  CHECK(code_of([&] { det_phase_sum(u, 2.0, 0.0, INFINITY); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("lorentzian_sum_integral: worked examples") {
  ResonanceSet one;
  one.points.push_back(ResonancePoint::from(I));
  CHECK(lorentzian_sum_integral(one, -INFINITY, INFINITY) == doctest::Approx(-2 * kPi).epsilon(1e-15));
  CHECK(lorentzian_sum_integral(one, 0.0, 1.0) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(lorentzian_sum_integral(ResonanceSet{}, -1.0, 5.0) == 0.0);
  ResonanceSet with_real = one;
  with_real.points.push_back(ResonancePoint::from(Complex(0.5, 0.0)));
  CHECK(lorentzian_sum_integral(with_real, 0.0, 1.0) == lorentzian_sum_integral(one, 0.0, 1.0));
}

TEST_CASE("lorentzian_sum_integral: quadrature of the signed Lorentzian") {
  ResonanceSet rs;
  rs.points.push_back(ResonancePoint::from(Complex(0.3, 0.7)));
  rs.points.push_back(ResonancePoint::from(Complex(-1.0, -0.4)));
  const int n = 200000;
  const double a = -2.0, b = 1.5, h = (b - a) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = a + (i + 0.5) * h;
    for (const auto& p : rs.points) sum -= 2 * p.beta / ((s - p.alpha) * (s - p.alpha) + p.beta * p.beta);
  }
  CHECK(lorentzian_sum_integral(rs, a, b) == doctest::Approx(sum * h).epsilon(1e-8));
}

TEST_CASE("eq2_check: worked examples") {
  CHECK(eq2_check(eq2_example(), 0.0, 0.0, 2.0).residual <= 1e-6);
  const auto k1 = MatrixHerglotzModel::from_scalar(M::cauchy(0.2, 0.7));
  CHECK(eq2_check(k1, 0.1, -1.0, 3.0).residual <= 1e-12);
  const auto mixed = diag_model({1, -1}, M::cauchy(0, 1), M::semicircle(2));
  const auto r = eq2_check(mixed, 0.0, -1.0, 1.0);
  CHECK(r.residual <= 1e-6);
  // Opposite-sign widths cancel on a symmetric interval.
  CHECK(r.phase_sum == doctest::Approx(0.0));
}

TEST_CASE("resonance_index: worked examples") {
  const auto u = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  const auto plus = resonance_index_detail(u, 2.0, 1.0 / std::log(2.0));
  CHECK(plus.index == 1);
  REQUIRE(plus.levels.size() == 3);
  // Oracle: the pole at lambda + 1e-3 i from the closed form.
  const Complex r_y = -1.0 / (std::log((1.0 - Complex(2.0, 1e-3)) / (0.0 - Complex(2.0, 1e-3))));
  CHECK(r_y.imag() > 0.0);
  CHECK(std::abs(r_y - 1.0 / std::log(2.0)) < 10 * std::sqrt(1e-3) * (1 + 1.0 / std::log(2.0)));

  const auto mirror = MatrixHerglotzModel::from_scalar(M::uniform(0, 1), -1);
  CHECK(resonance_index(mirror, 2.0, -1.0 / std::log(2.0)) == -1);

  CHECK(code_of([&] { resonance_index(u, 2.0, 0.0); }) == ErrorCode::kNotAResonance);
}

TEST_CASE("ssf_total: worked examples") {
  const auto c = ssf_total(MatrixHerglotzModel::from_scalar(M::cauchy(0, 1)), 0.0, 0.0, 1.0);
  CHECK(c.xi_ac == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(c.xi_singular == 0);
  CHECK(c.xi_total == doctest::Approx(0.25).epsilon(1e-14));

  const auto u = ssf_total(MatrixHerglotzModel::from_scalar(M::uniform(0, 1)), 2.0, 0.0, 2.0);
  CHECK(u.xi_ac == 0.0);
  CHECK(u.xi_singular == 1);
  CHECK(u.xi_total == 1.0);
  REQUIRE(u.contributing_real_points.size() == 1);
  CHECK(u.contributing_real_points[0].r == doctest::Approx(1.4427).epsilon(1e-4));

  const auto e = ssf_total(MatrixHerglotzModel::from_scalar(M::uniform(0, 1)), 2.0, 0.8, 0.8);
  CHECK(e.xi_ac == 0.0);
  CHECK(e.xi_singular == 0);
  CHECK(e.xi_total == 0.0);
}

TEST_CASE("ssf_total: endpoint ambiguity and mirror") {
  const auto u = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  CHECK(code_of([&] { ssf_total(u, 2.0, 0.0, 1.0 / std::log(2.0)); }) == ErrorCode::kEndpointAmbiguity);
  const auto mirror = MatrixHerglotzModel::from_scalar(M::uniform(0, 1), -1);
  const auto d = ssf_total(mirror, 2.0, -2.0, 0.0);
  CHECK(d.xi_singular == -1);
  CHECK(d.xi_total == -1.0);
}

TEST_CASE("property: eq2 dual path on the seeded matrix corpus") {
  lab::CorpusRng rng(0);
  const auto corpus = lab::matrix_corpus(rng, 20);
  int evaluated = 0;
  for (const auto& mc : corpus) {
    for (double lambda : mc.lambdas) {
      const auto r = eq2_check(mc.model, lambda, mc.a, mc.b);
      CHECK(r.residual <= 1e-6);
      ++evaluated;
    }
  }
  CHECK(evaluated == 100);
}

TEST_CASE("property: determinant factorization") {
  lab::CorpusRng rng(1);
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& mc : lab::matrix_corpus(rng, 10)) {
    const double lambda = mc.lambdas.front();
    const ComplexMatrix a = eval_matrix_boundary(mc.model, lambda);
    const auto rs = resonance_set_from_matrix(a);
    const auto k = a.rows();
    for (int i = 0; i < 10; ++i) {
      const double s = u(gen);
      const Complex det = (ComplexMatrix::Identity(k, k) + s * a).determinant();
      Complex prod = 1.0;
      for (const auto& p : rs.points) prod *= 1.0 - s / p.value;
      CHECK(std::abs(det - prod) <= 1e-8 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("property: k = 1 resonance set equals the rank-one point") {
  for (const auto& [m, lambda] : std::vector<std::pair<M, double>>{
           {M::cauchy(0.3, 0.5), 1.0}, {M::semicircle(2), -0.4}, {M::uniform(-1, 2), 0.2}, {M::uniform(0, 1), 2.0}}) {
    const auto rs = resonance_set(MatrixHerglotzModel::from_scalar(m), lambda);
    REQUIRE(rs.points.size() == 1);
    CHECK(std::abs(rs.points[0].value - resonance_point(m, lambda).value) <= 1e-12);
  }
}

TEST_CASE("property: ssf_total additivity and bounds on the corpus") {
  lab::CorpusRng rng(0);
  for (const auto& mc : lab::matrix_corpus(rng, 20)) {
    for (double lambda : mc.lambdas) {
      const double mid = 0.5 * (mc.a + mc.b);
      const auto whole = ssf_total(mc.model, lambda, mc.a, mc.b);
      const auto left = ssf_total(mc.model, lambda, mc.a, mid);
      const auto right = ssf_total(mc.model, lambda, mid, mc.b);
      CHECK(std::abs(whole.xi_total - (left.xi_total + right.xi_total)) <= 1e-9);
      const int k = mc.model.dimension();
      CHECK(std::abs(whole.xi_ac) < k);
      int sum = 0;
      for (const auto& c : whole.contributing_real_points) sum += c.index;
      CHECK(sum == whole.xi_singular);
    }
  }
}

TEST_CASE("property: additivity across a real resonance point") {
  const auto u = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  const auto whole = ssf_total(u, 2.0, 0.0, 3.0);
  const auto left = ssf_total(u, 2.0, 0.0, 1.0);
  const auto right = ssf_total(u, 2.0, 1.0, 3.0);
  CHECK(whole.xi_total == left.xi_total + right.xi_total);
}

TEST_CASE("property: resonance index stable across the finest levels") {
  // Real crossings of a few k = 1 and k = 2 models outside the a.c. support.
  const auto u = MatrixHerglotzModel::from_scalar(M::uniform(0, 1));
  const auto s = MatrixHerglotzModel::from_scalar(M::semicircle(2), -1);
  const auto mixed = diag_model({1, -1}, M::uniform(0, 1), M::semicircle(2));
  const std::vector<std::pair<const MatrixHerglotzModel*, double>> cases{{&u, 2.0}, {&u, -1.5}, {&s, 3.0},
                                                                         {&mixed, 2.5}};
  for (const auto& [m, lambda] : cases) {
    const auto rs = resonance_set(*m, lambda);
    for (const auto& p : rs.real_points()) {
      const auto detail = resonance_index_detail(*m, lambda, p.alpha);
      CHECK(detail.levels[1].upper - detail.levels[1].lower == detail.index);
      CHECK(std::abs(detail.index) == 1);
    }
  }
}
