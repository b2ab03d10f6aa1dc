#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "reslab/errors.hpp"
#include "reslab/numerics.hpp"

namespace reslab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 1000;
constexpr double kReconstructionTolerance = 1e-9;
// Golden-ratio angle offset for the starting circle; avoids symmetric starts.
constexpr double kAngleOffset = 0.6180339887498949;
constexpr double kClusterSlack = 1e3;

struct Group {
  std::vector<std::size_t> members;
  Complex centroid;
};

// Coefficients of the m-th derivative.
std::vector<Complex> derivative(std::vector<Complex> c, std::size_t m) {
  for (std::size_t k = 0; k < m && c.size() > 1; ++k) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
    c.pop_back();
  }
  return c;
}

// A root of multiplicity m is a simple root of p^(m-1); polish the centroid there.
Complex polish_multiple(const std::vector<Complex>& coeffs, Complex c, std::size_t m) {
  const auto d = derivative(coeffs, m - 1);
  if (d.size() < 2) return c;
  const ComplexPolynomial q(d);
  for (int it = 0; it < 8; ++it) {
    const auto [v, dv] = q.eval_with_derivative(c);
    if (dv == Complex{0.0, 0.0}) break;
    const Complex step = v / dv;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    c -= step;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(c))) break;
  }
  return c;
}

double group_radius(std::span<const Complex> roots, const std::vector<std::size_t>& members, Complex c) {
  double r = 0.0;
  for (auto i : members) r = std::max(r, std::abs(roots[i] - c));
  return r;
}

double horner_bound(const std::vector<Complex>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + std::abs(*it);
  return acc;
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == Complex{0.0, 0.0}) {
    coefficients_.pop_back();
  }
  if (coefficients_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "polynomial must have degree >= 1 after trimming");
  }
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "polynomial coefficients must be finite");
    }
  }
}

Complex ComplexPolynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<Complex, Complex> ComplexPolynomial::eval_with_derivative(Complex x) const {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const auto& r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return ComplexPolynomial(std::move(c));
}

double reconstruction_error(const ComplexPolynomial& p, std::span<const Complex> roots) {
  if (static_cast<int>(roots.size()) != p.degree()) return std::numeric_limits<double>::infinity();
  const auto rebuilt = ComplexPolynomial::from_roots(roots, p.leading());
  double scale = 0.0;
  for (const auto& c : p.coefficients()) scale = std::max(scale, std::abs(c));
  double err = 0.0;
  const auto& a = p.coefficients();
  const auto& b = rebuilt.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex bi = i < b.size() ? b[i] : Complex{0.0};
    err = std::max(err, std::abs(a[i] - bi));
  }
  return err / scale;
}

std::vector<std::vector<std::size_t>> multiple_root_clusters(std::span<const Complex> roots, double scale) {
  std::vector<std::size_t> free(roots.size());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
  std::vector<std::vector<std::size_t>> out;

  // Repeatedly take the largest admissible group: a seed plus its m - 1
  // nearest free neighbours. Pairs inside a triple root are often too far
  // apart for the m = 2 bound, so groups are grown from seeds, not merged.
  while (!free.empty()) {
    Group best{{free.front()}, roots[free.front()]};
    double best_radius = 0.0;
    for (std::size_t seed : free) {
      std::vector<std::size_t> order = free;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(roots[x] - roots[seed]) < std::abs(roots[y] - roots[seed]);
      });
      for (std::size_t m = order.size(); m >= std::max<std::size_t>(2, best.members.size()); --m) {
        std::vector<std::size_t> members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
        Complex sum = 0.0;
        for (auto i : members) sum += roots[i];
        const Complex centroid = sum / static_cast<double>(m);
        const double radius = group_radius(roots, members, centroid);
        const double limit = std::pow(kClusterSlack * kEps, 1.0 / static_cast<double>(m)) * scale;
        if (radius > limit) continue;
        if (m > best.members.size() || radius < best_radius) {
          best = {std::move(members), centroid};
          best_radius = radius;
        }
        break;
      }
    }
    std::sort(best.members.begin(), best.members.end());
    for (auto i : best.members) free.erase(std::find(free.begin(), free.end(), i));
    out.push_back(std::move(best.members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Complex> poly_roots(const ComplexPolynomial& p) {
  const auto& coeffs = p.coefficients();

  // Exact zero roots first.
  std::size_t zeros = 0;
  while (coeffs[zeros] == Complex{0.0, 0.0}) ++zeros;
  std::vector<Complex> roots(zeros, Complex{0.0, 0.0});
  const int n = p.degree() - static_cast<int>(zeros);
  if (n == 0) return roots;

  std::vector<Complex> monic(coeffs.begin() + zeros, coeffs.end());
  const Complex lead = monic.back();
  for (auto& c : monic) c /= lead;
  if (n == 1) {
    roots.push_back(-monic[0]);
    return roots;
  }
  const ComplexPolynomial q(monic);

  double max_coeff = 0.0;
  for (int i = 0; i < n; ++i) max_coeff = std::max(max_coeff, std::abs(monic[i]));
  const double radius = 1.0 + max_coeff;

  std::vector<Complex> z(n);
  for (int j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / n + kAngleOffset;
    z[j] = std::polar(radius, angle);
  }

  std::vector<bool> done(n, false);
  int remaining = n;
  int iteration = 0;
  for (; iteration < kMaxIterations && remaining > 0; ++iteration) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto [value, deriv] = q.eval_with_derivative(z[i]);
      if (std::abs(value) <= 8.0 * kEps * horner_bound(monic, std::abs(z[i]))) {
        done[i] = true;
        --remaining;
        continue;
      }
      Complex repulsion = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      Complex step;
      if (deriv == Complex{0.0, 0.0}) {
        // Stationary point: nudge off it.
        step = Complex{radius * 1e-8, radius * 1e-8};
      } else {
        const Complex ratio = value / deriv;
        step = ratio / (1.0 - ratio * repulsion);
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = Complex{radius * 1e-8, -radius * 1e-8};
      }
      z[i] -= step;
    }
  }

  // Multiple roots only converge to ~eps^(1/m); their centroid is much better.
  double root_scale = 1.0;
  for (const auto& x : z) root_scale = std::max(root_scale, std::abs(x));
  std::vector<Complex> snapped = z;
  for (const auto& g : multiple_root_clusters(z, root_scale)) {
    if (g.size() < 2) continue;
    Complex sum = 0.0;
    for (auto i : g) sum += z[i];
    const Complex centre = polish_multiple(monic, sum / static_cast<double>(g.size()), g.size());
    for (auto i : g) snapped[i] = centre;
  }

  std::vector<Complex> plain = roots;
  plain.insert(plain.end(), z.begin(), z.end());
  roots.insert(roots.end(), snapped.begin(), snapped.end());
  double err = reconstruction_error(p, roots);
  const double plain_err = reconstruction_error(p, plain);
  if (plain_err < err) {
    roots = std::move(plain);
    err = plain_err;
  }
  if (remaining > 0 && !(err <= kReconstructionTolerance)) throw RootFindingError(roots, err, iteration);
  return roots;
}

}  // namespace reslab
