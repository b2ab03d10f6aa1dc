#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

using namespace reslab;
using oracle::kPi;

namespace {

const Complex I{0.0, 1.0};

double root_distance(const std::vector<Complex>& got, const std::vector<Complex>& want) {
  return oracle::multiset_distance(got, want);
}

}  // namespace

TEST_CASE("poly_roots: worked examples") {
  SUBCASE("s^2 + 1") {
    const auto roots = poly_roots(ComplexPolynomial({1.0, 0.0, 1.0}));
    CHECK(root_distance(roots, {I, -I}) < 1e-12);
  }
  SUBCASE("s - 3") {
    const auto roots = poly_roots(ComplexPolynomial({-3.0, 1.0}));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - 3.0) < 1e-14);
  }
  SUBCASE("s^2 - 2s + 5") {
    const auto roots = poly_roots(ComplexPolynomial({5.0, -2.0, 1.0}));
    CHECK(root_distance(roots, {Complex(1, 2), Complex(1, -2)}) < 1e-12);
  }
}

TEST_CASE("poly_roots: non-monic and trimmed input") {
  const ComplexPolynomial p({Complex(6, 0), Complex(-5, 0), Complex(1, 0), Complex(0, 0)});
  CHECK(p.degree() == 2);
  const auto roots = poly_roots(ComplexPolynomial({12.0, -10.0, 2.0}));
  CHECK(root_distance(roots, {2.0, 3.0}) < 1e-12);
}

TEST_CASE("poly_roots: constant polynomial is rejected") {
  CHECK_THROWS_AS(ComplexPolynomial({Complex(2.0)}), Error);
  CHECK_THROWS_AS(ComplexPolynomial({Complex(2.0), Complex(0.0)}), Error);
}

TEST_CASE("poly_roots: repeated roots still reconstruct") {
  const std::vector<Complex> want{1.0, 1.0, 1.0, Complex(0, 2)};
  const auto p = ComplexPolynomial::from_roots(want);
  const auto roots = poly_roots(p);
  CHECK(roots.size() == 4);
  CHECK(reconstruction_error(p, roots) <= 1e-9);
}

TEST_CASE("property: poly_roots round trip on random polynomials") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int degree = 1 + static_cast<int>(u(gen) * 8.0);
    std::vector<Complex> roots;
    for (int i = 0; i < degree; ++i) roots.push_back(std::polar(std::sqrt(u(gen)), 2.0 * kPi * u(gen)));
    const auto p = ComplexPolynomial::from_roots(roots);
    const auto found = poly_roots(p);
    REQUIRE(static_cast<int>(found.size()) == degree);
    CHECK(reconstruction_error(p, found) <= 1e-9);
  }
}

TEST_CASE("small_eigenvalues: worked examples") {
  SUBCASE("diag(2, 3i)") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = Complex(0, 3);
    CHECK(root_distance(small_eigenvalues(m).values, {2.0, Complex(0, 3)}) < 1e-12);
  }
  SUBCASE("swap matrix") {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    CHECK(root_distance(small_eigenvalues(m).values, {1.0, -1.0}) < 1e-12);
  }
  SUBCASE("nilpotent Jordan block") {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    const auto r = small_eigenvalues(m);
    CHECK(root_distance(r.values, {0.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("small_eigenvalues: cluster flag on a perturbed Jordan block") {
  ComplexMatrix m(3, 3);
  m << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1e-15, 0.0, 1.0;
  const auto r = small_eigenvalues(m);
  REQUIRE(r.values.size() == 3);
  bool any = false;
  for (bool c : r.clustered) any = any || c;
  CHECK(any);
  for (const auto& v : r.values) CHECK(std::abs(v - 1.0) < 1e-4);
}

TEST_CASE("small_eigenvalues: dimension contract") {
  CHECK_THROWS_AS(small_eigenvalues(ComplexMatrix(0, 0)), Error);
  CHECK_THROWS_AS(small_eigenvalues(ComplexMatrix::Identity(17, 17)), Error);
  CHECK_THROWS_AS(small_eigenvalues(ComplexMatrix::Identity(2, 3)), Error);
}

TEST_CASE("property: eigenvalues agree with a QR oracle and sum to the trace") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 8;
    ComplexMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = Complex(n(gen), n(gen));
    const auto got = small_eigenvalues(m).values;
    Complex sum = 0.0;
    for (const auto& v : got) sum += v;
    const Complex trace = m.trace();
    CHECK(std::abs(sum - trace) <= 1e-9 * std::max(1.0, std::abs(trace)));
    CHECK(oracle::multiset_distance(got, oracle::eigenvalues(m)) < 1e-8);
    const double scale = m.cwiseAbs().maxCoeff();
    for (const auto& a : got) {
      const Complex det = (m - a * ComplexMatrix::Identity(k, k)).determinant();
      CHECK(std::abs(det) <= 1e-8 * std::pow(std::max(1.0, scale), k));
    }
  }
}

TEST_CASE("characteristic polynomial of a companion-like matrix") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const auto p = characteristic_polynomial(m);
  REQUIRE(p.degree() == 2);
  CHECK(std::abs(p.coefficients()[0] - Complex(-2.0)) < 1e-12);
  CHECK(std::abs(p.coefficients()[1] - Complex(-5.0)) < 1e-12);
  CHECK(std::abs(p.coefficients()[2] - Complex(1.0)) < 1e-12);
}

TEST_CASE("unwrap_phase: worked examples") {
  SUBCASE("quarter turns") {
    const std::vector<Complex> pts{1.0, I, -1.0, -I, 1.0};
    const auto s = unwrap_phase(pts, 0.0);
    const std::vector<double> want{0, kPi / 2, kPi, 3 * kPi / 2, 2 * kPi};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(s.arguments[i] == doctest::Approx(want[i]).epsilon(1e-15));
  }
  SUBCASE("constant") {
    const std::vector<Complex> pts{1.0, 1.0, 1.0};
    const auto s = unwrap_phase(pts, 0.0);
    for (double a : s.arguments) CHECK(a == 0.0);
  }
  SUBCASE("conjugate path") {
    const std::vector<Complex> pts{1.0, -I, -1.0, I, 1.0};
    const auto s = unwrap_phase(pts, 0.0);
    const std::vector<double> want{0, -kPi / 2, -kPi, -3 * kPi / 2, -2 * kPi};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(s.arguments[i] == doctest::Approx(want[i]).epsilon(1e-15));
  }
}

TEST_CASE("unwrap_phase: anchor and refinement error") {
  const std::vector<Complex> pts{1.0, I};
  const auto s = unwrap_phase(pts, 4 * kPi);
  CHECK(s.arguments[0] == doctest::Approx(4 * kPi));
  CHECK(s.arguments[1] == doctest::Approx(4.5 * kPi));

  const std::vector<Complex> jump{1.0, I, std::polar(1.0, 0.5 * kPi + 2.0)};
  try {
    unwrap_phase(jump, 0.0);
    FAIL("expected RefinementNeeded");
  } catch (const RefinementNeeded& e) {
    CHECK(e.index() == 2);
    CHECK(e.code() == ErrorCode::kRefinementNeeded);
  }

  const std::vector<Complex> not_unit{1.0, 2.0};
  CHECK_THROWS_AS(unwrap_phase(not_unit, 0.0), Error);
}

TEST_CASE("property: unwrap_phase exactness on a fine random walk") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> step(-1.4, 1.4);
  std::vector<Complex> pts;
  std::vector<double> phases;
  double phase = 0.0;
  for (int i = 0; i < 2000; ++i) {
    pts.push_back(std::polar(1.0, phase));
    phases.push_back(phase);
    phase += step(gen);
  }
  const auto s = unwrap_phase(pts, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(std::exp(I * s.arguments[i]) - pts[i]) <= 1e-12);
    if (i > 0) CHECK(std::abs(s.arguments[i] - s.arguments[i - 1]) < kPi);
  }
  // Steps below pi/2 are recovered exactly, so the walk itself comes back.
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(s.arguments[i] - phases[i]) < 1e-9);
}

TEST_CASE("adaptive_phase_path follows a winding function") {
  const auto f = [](double s) { return std::polar(1.0, 3.0 * s * s); };
  const auto path = adaptive_phase_path(f, 0.0, 3.0, 0.0);
  CHECK(path.phase.arguments.back() == doctest::Approx(27.0).epsilon(1e-12));
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    CHECK(path.nodes[i] > path.nodes[i - 1]);
    CHECK(std::abs(path.phase.arguments[i] - path.phase.arguments[i - 1]) <= kPi / 4 + 1e-12);
  }
  const auto reversed = adaptive_phase_path(f, 3.0, 0.0, 27.0);
  CHECK(reversed.phase.arguments.back() == doctest::Approx(0.0).epsilon(1e-12));
  const auto single = adaptive_phase_path(f, 1.0, 1.0, 0.5);
  CHECK(single.nodes.size() == 1);
  CHECK(single.phase.arguments[0] == 0.5);
}

TEST_CASE("adaptive_phase_path: breakpoints expose a turn the uniform grid aliases") {
  // One full turn inside a width-1e-3 window near 0.3; the uniform grid over
  // [-1e6, 1e6] sees identical values at every coarse node.
  const auto f = [](double s) { return std::polar(1.0, -2.0 * (std::atan((s - 0.3) / 1e-3) + kPi / 2)); };
  const auto blind = adaptive_phase_path(f, -1e6, 1e6, 0.0);
  const std::vector<double> hints{0.3, 0.3 - 1e-3, 0.3 + 1e-3, 0.29, 0.31, 0.2, 0.4, -1.0, 1.0};
  const auto seeded = adaptive_phase_path(f, -1e6, 1e6, 0.0, 16, hints);
  CHECK(seeded.phase.arguments.back() == doctest::Approx(-2 * kPi).epsilon(1e-6));
  CHECK(std::abs(blind.phase.arguments.back() - seeded.phase.arguments.back()) > 1.0);
}

TEST_CASE("multiple_root_clusters groups by multiplicity-aware radius") {
  const std::vector<Complex> roots{1.0 + 1e-5, 1.0 - 0.5e-5 + Complex(0, 0.8e-5), 1.0 - 0.5e-5 - Complex(0, 0.8e-5),
                                   2.0, 2.0 + 1e-4, Complex(0, 3)};
  const auto groups = multiple_root_clusters(roots, 3.0);
  REQUIRE(groups.size() == 4);
  CHECK(groups[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(groups[1] == std::vector<std::size_t>{3});
  CHECK(groups[2] == std::vector<std::size_t>{4});
}

TEST_CASE("small_eigenvalues: exact triple eigenvalue") {
  const ComplexMatrix m = Complex(0, 1) * ComplexMatrix::Identity(3, 3);
  const auto r = small_eigenvalues(m);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(r.values[i] - Complex(0, 1)) < 1e-14);
    CHECK(r.clustered[i]);
  }
}

TEST_CASE("adaptive_stieltjes: worked examples") {
  SUBCASE("Cauchy density at i") {
    const Density w{[](double t) { return 1.0 / (kPi * (1.0 + t * t)); }, -INFINITY, INFINITY};
    const Complex got = adaptive_stieltjes(w, I);
    CHECK(std::abs(got - Complex(0, 0.5)) <= 1e-8);
    // The closed form it is compared against, checked by brute force.
    const Complex closed = -1.0 / (I + I);
    const Complex brute = oracle::riemann_stieltjes(w.value, -2e3, 2e3, I, 4'000'000);
    CHECK(std::abs(closed - brute) < 1e-3);
  }
  SUBCASE("uniform density at 2") {
    const Density w{[](double) { return 1.0; }, 0.0, 1.0};
    CHECK(std::abs(adaptive_stieltjes(w, 2.0) - Complex(-std::log(2.0))) <= 1e-8);
  }
  SUBCASE("semicircle density at i") {
    const Density w{[](double t) { return std::sqrt(std::max(0.0, 4.0 - t * t)) / (2.0 * kPi); }, -2.0, 2.0};
    const Complex want(0.0, (std::sqrt(5.0) - 1.0) / 2.0);
    CHECK(std::abs(adaptive_stieltjes(w, I) - want) <= 1e-8);
    const Complex brute = oracle::riemann_stieltjes(w.value, -2.0, 2.0, I, 200000);
    CHECK(std::abs(want - brute) < 1e-8);
  }
}

TEST_CASE("adaptive_stieltjes: budget and support errors") {
  const Density w{[](double) { return 1.0; }, 0.0, 1.0};
  CHECK_THROWS_AS(adaptive_stieltjes(w, 0.5), Error);
  QuadratureOptions tight;
  tight.abs_tolerance = 1e-300;
  tight.max_panels = 4;
  CHECK_THROWS_AS(adaptive_stieltjes(w, Complex(0.5, 1e-3), tight), QuadratureBudgetError);
}

TEST_CASE("property: Stieltjes transform of a positive weight is Herglotz") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Density w{[](double t) { return std::exp(-t * t) * (1.0 + std::sin(3 * t) * 0.5); }, -8.0, 8.0};
  for (int i = 0; i < 50; ++i) {
    const Complex z(u(gen), std::abs(u(gen)) + 1e-2);
    CHECK(adaptive_stieltjes(w, z).imag() >= 0.0);
  }
}

TEST_CASE("boundary_extrapolate: worked examples") {
  SUBCASE("Cauchy boundary value") {
    const auto r = boundary_extrapolate([](double y) { return -1.0 / (Complex(0.0, y) + I); });
    CHECK(std::abs(r.value - I) < 1e-10);
  }
  SUBCASE("linear intercept") {
    const Complex c(0.3, -1.2);
    const auto r = boundary_extrapolate([c](double y) { return c + 3.0 * y; });
    CHECK(std::abs(r.value - c) < 1e-13);
    CHECK(r.error_estimate < 1e-12);
  }
  SUBCASE("constant") {
    const auto r = boundary_extrapolate([](double) { return Complex(2.5, 1.0); });
    CHECK(r.value == Complex(2.5, 1.0));
  }
}

TEST_CASE("boundary_extrapolate: divergence at a pole") {
  CHECK_THROWS_AS(boundary_extrapolate([](double y) { return 1.0 / Complex(0.0, y); }), Error);
  try {
    boundary_extrapolate([](double y) { return 1.0 / Complex(0.0, y); });
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDivergent);
  }
}
