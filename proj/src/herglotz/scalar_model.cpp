#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "reslab/errors.hpp"
#include "reslab/herglotz.hpp"

namespace reslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

bool near(double x, double point) { return std::abs(x - point) <= 1e-12 * (1.0 + std::abs(point)); }

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

Complex conj_if_lower(Complex value, bool lower) { return lower ? std::conj(value) : value; }

// Values in the upper half-plane (Im z > 0); the lower half follows by symmetry.
Complex upper_cauchy(const ScalarHerglotzModel::Cauchy& m, Complex z) {
  return -m.mass / (z - m.center + Complex{0.0, m.scale});
}

Complex upper_semicircle(const ScalarHerglotzModel::Semicircle& m, Complex z) {
  const double w2 = m.halfwidth * m.halfwidth;
  Complex root = std::sqrt(z * z - w2);
  if (root.imag() < 0.0) root = -root;
  return m.mass * 2.0 * (-z + root) / w2;
}

Complex upper_uniform(const ScalarHerglotzModel::Uniform& m, Complex z) {
  return m.mass / (m.b - m.a) * (std::log(m.b - z) - std::log(m.a - z));
}

Complex point_sum(const ScalarHerglotzModel::PointMasses& m, Complex z) {
  Complex acc = 0.0;
  for (const auto& p : m.masses) acc += p.weight / (p.position - z);
  return acc;
}

}  // namespace

ScalarHerglotzModel ScalarHerglotzModel::cauchy(double center, double scale, double mass) {
  require(std::isfinite(center), "cauchy center must be finite");
  require(scale > 0.0 && std::isfinite(scale), "cauchy scale must be positive");
  require(mass > 0.0 && std::isfinite(mass), "model mass must be positive");
  return ScalarHerglotzModel(Cauchy{center, scale, mass});
}

ScalarHerglotzModel ScalarHerglotzModel::semicircle(double halfwidth, double mass) {
  require(halfwidth > 0.0 && std::isfinite(halfwidth), "semicircle halfwidth must be positive");
  require(mass > 0.0 && std::isfinite(mass), "model mass must be positive");
  return ScalarHerglotzModel(Semicircle{halfwidth, mass});
}

ScalarHerglotzModel ScalarHerglotzModel::uniform(double a, double b, double mass) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform support needs finite a < b");
  require(mass > 0.0 && std::isfinite(mass), "model mass must be positive");
  return ScalarHerglotzModel(Uniform{a, b, mass});
}

ScalarHerglotzModel ScalarHerglotzModel::point_masses(std::vector<PointMass> masses) {
  require(!masses.empty(), "point_masses needs at least one atom");
  for (const auto& p : masses) {
    require(std::isfinite(p.position), "atom positions must be finite");
    require(p.weight > 0.0 && std::isfinite(p.weight), "atom weights must be positive");
  }
  return ScalarHerglotzModel(PointMasses{std::move(masses)});
}

ScalarHerglotzModel ScalarHerglotzModel::combination(std::vector<Term> terms) {
  require(!terms.empty(), "combination needs at least one member");
  bool any_positive = false;
  for (const auto& t : terms) {
    require(t.weight >= 0.0 && std::isfinite(t.weight), "combination weights must be non-negative");
    any_positive = any_positive || t.weight > 0.0;
  }
  require(any_positive, "combination needs a positive weight");
  return ScalarHerglotzModel(Combination{std::move(terms)});
}

double ScalarHerglotzModel::total_mass() const {
  return std::visit(overloaded{
                        [](const Cauchy& m) { return m.mass; },
                        [](const Semicircle& m) { return m.mass; },
                        [](const Uniform& m) { return m.mass; },
                        [](const PointMasses& m) {
                          double s = 0.0;
                          for (const auto& p : m.masses) s += p.weight;
                          return s;
                        },
                        [](const Combination& m) {
                          double s = 0.0;
                          for (const auto& t : m.terms) s += t.weight * t.model.total_mass();
                          return s;
                        },
                    },
                    variant_);
}

std::string ScalarHerglotzModel::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Cauchy& m) { os << "cauchy(" << m.center << "," << m.scale << ")"; },
                 [&](const Semicircle& m) { os << "semicircle(" << m.halfwidth << ")"; },
                 [&](const Uniform& m) { os << "uniform(" << m.a << "," << m.b << ")"; },
                 [&](const PointMasses& m) { os << "point_masses[" << m.masses.size() << "]"; },
                 [&](const Combination& m) {
                   os << "combination(";
                   for (std::size_t i = 0; i < m.terms.size(); ++i) {
                     if (i) os << "+";
                     os << m.terms[i].weight << "*" << m.terms[i].model.describe();
                   }
                   os << ")";
                 },
             },
             variant_);
  return os.str();
}

std::vector<double> ScalarHerglotzModel::excluded_points() const {
  std::vector<double> out;
  std::visit(overloaded{
                 [](const Cauchy&) {},
                 [&](const Semicircle& m) {
                   out.push_back(-m.halfwidth);
                   out.push_back(m.halfwidth);
                 },
                 [&](const Uniform& m) {
                   out.push_back(m.a);
                   out.push_back(m.b);
                 },
                 [&](const PointMasses& m) {
                   for (const auto& p : m.masses) out.push_back(p.position);
                 },
                 [&](const Combination& m) {
                   for (const auto& t : m.terms) {
                     if (t.weight == 0.0) continue;
                     auto inner = t.model.excluded_points();
                     out.insert(out.end(), inner.begin(), inner.end());
                   }
                 },
             },
             variant_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ScalarHerglotzModel::is_excluded(double lambda) const {
  const auto pts = excluded_points();
  return std::any_of(pts.begin(), pts.end(), [&](double p) { return near(lambda, p); });
}

Complex eval_scalar(const ScalarHerglotzModel& model, Complex z) {
  using M = ScalarHerglotzModel;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation point must be finite");
  }
  const bool lower = z.imag() < 0.0;
  const Complex zu = lower ? std::conj(z) : z;
  if (z.imag() != 0.0) {
    return std::visit(
        overloaded{
            [&](const M::Cauchy& m) { return conj_if_lower(upper_cauchy(m, zu), lower); },
            [&](const M::Semicircle& m) { return conj_if_lower(upper_semicircle(m, zu), lower); },
            [&](const M::Uniform& m) { return conj_if_lower(upper_uniform(m, zu), lower); },
            [&](const M::PointMasses& m) { return point_sum(m, z); },
            [&](const M::Combination& m) {
              Complex acc = 0.0;
              for (const auto& t : m.terms) {
                if (t.weight != 0.0) acc += t.weight * eval_scalar(t.model, z);
              }
              return acc;
            },
        },
        model.variant());
  }

  // Real axis: only off the support.
  const double x = z.real();
  auto on_support = [&]() {
    throw Error(ErrorCode::kBoundaryEvaluationRequired,
                "real evaluation point lies on the support; use the boundary value");
  };
  return std::visit(
      overloaded{
          [&](const M::Cauchy&) -> Complex {
            on_support();
            return 0.0;
          },
          [&](const M::Semicircle& m) -> Complex {
            if (std::abs(x) <= m.halfwidth) on_support();
            const double w2 = m.halfwidth * m.halfwidth;
            const double root = std::copysign(std::sqrt(x * x - w2), x);
            return m.mass * 2.0 * (-x + root) / w2;
          },
          [&](const M::Uniform& m) -> Complex {
            if (x >= m.a && x <= m.b) on_support();
            return m.mass / (m.b - m.a) * std::log((m.b - x) / (m.a - x));
          },
          [&](const M::PointMasses& m) -> Complex {
            for (const auto& p : m.masses) {
              if (near(x, p.position)) {
                throw Error(ErrorCode::kMeasureZeroPoint, "evaluation point coincides with an atom");
              }
            }
            return point_sum(m, x);
          },
          [&](const M::Combination& m) -> Complex {
            Complex acc = 0.0;
            for (const auto& t : m.terms) {
              if (t.weight != 0.0) acc += t.weight * eval_scalar(t.model, z);
            }
            return acc;
          },
      },
      model.variant());
}

Complex eval_boundary_scalar(const ScalarHerglotzModel& model, double lambda, BoundarySide side) {
  using M = ScalarHerglotzModel;
  if (!std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArgument, "lambda must be finite");
  if (model.is_excluded(lambda)) {
    throw Error(ErrorCode::kMeasureZeroPoint,
                "lambda is an atom or a support endpoint; no boundary value");
  }
  const bool lower = side == BoundarySide::kLower;
  const Complex upper = std::visit(
      overloaded{
          [&](const M::Cauchy& m) -> Complex { return upper_cauchy(m, lambda); },
          [&](const M::Semicircle& m) -> Complex {
            const double w2 = m.halfwidth * m.halfwidth;
            if (std::abs(lambda) > m.halfwidth) return eval_scalar(model, lambda);
            return m.mass * 2.0 * Complex{-lambda, std::sqrt(w2 - lambda * lambda)} / w2;
          },
          [&](const M::Uniform& m) -> Complex {
            if (lambda < m.a || lambda > m.b) return eval_scalar(model, lambda);
            // Principal log of the modulus ratio plus i*pi*density on the cut.
            const double scale = m.mass / (m.b - m.a);
            return scale * Complex{std::log((m.b - lambda) / (lambda - m.a)), kPi};
          },
          [&](const M::PointMasses& m) -> Complex { return point_sum(m, lambda); },
          [&](const M::Combination& m) -> Complex {
            Complex acc = 0.0;
            for (const auto& t : m.terms) {
              if (t.weight != 0.0) acc += t.weight * eval_boundary_scalar(t.model, lambda);
            }
            return acc;
          },
      },
      model.variant());
  return conj_if_lower(upper, lower);
}

Complex stieltjes_oracle(const ScalarHerglotzModel& model, Complex z) {
  using M = ScalarHerglotzModel;
  return std::visit(
      overloaded{
          [&](const M::Cauchy& m) {
            const Density d{[m](double t) {
                              const double u = (t - m.center) / m.scale;
                              return m.mass / (kPi * m.scale * (1.0 + u * u));
                            },
                            -std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity()};
            return adaptive_stieltjes(d, z);
          },
          [&](const M::Semicircle& m) {
            const double w = m.halfwidth;
            const Density d{[m, w](double t) {
                              const double s = w * w - t * t;
                              return s > 0.0 ? m.mass * 2.0 / (kPi * w * w) * std::sqrt(s) : 0.0;
                            },
                            -w, w};
            return adaptive_stieltjes(d, z);
          },
          [&](const M::Uniform& m) {
            const double h = m.mass / (m.b - m.a);
            const Density d{[h](double) { return h; }, m.a, m.b};
            return adaptive_stieltjes(d, z);
          },
          [&](const M::PointMasses& m) { return point_sum(m, z); },
          [&](const M::Combination& m) {
            Complex acc = 0.0;
            for (const auto& t : m.terms) {
              if (t.weight != 0.0) acc += t.weight * stieltjes_oracle(t.model, z);
            }
            return acc;
          },
      },
      model.variant());
}

std::vector<SelfCheckItem> SelfCheckReport::failures() const {
  std::vector<SelfCheckItem> out;
  for (const auto& it : items) {
    if (!it.passed) out.push_back(it);
  }
  return out;
}

SelfCheckReport herglotz_selfcheck(const ScalarHerglotzModel& model, std::span<const Complex> samples,
                                   double oracle_tolerance) {
  SelfCheckReport report;
  auto record = [&](Complex z, const char* property, double deviation, double bound) {
    SelfCheckItem item{z, property, deviation, bound, deviation <= bound};
    report.passed = report.passed && item.passed;
    report.worst = std::max(report.worst, deviation);
    report.items.push_back(std::move(item));
  };
  for (const auto& z : samples) {
    if (!(z.imag() > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "self-check samples must lie in the upper half-plane");
    }
    const Complex f = eval_scalar(model, z);
    const double scale = 1.0 + std::abs(f);
    record(z, "positivity", std::max(0.0, -f.imag()), 1e-12 * scale);
    const Complex mirrored = eval_scalar(model, std::conj(z));
    record(z, "conjugate_symmetry", std::abs(mirrored - std::conj(f)), 1e-12 * scale);
    double oracle_dev;
    try {
      oracle_dev = std::abs(stieltjes_oracle(model, z) - f);
    } catch (const QuadratureBudgetError& e) {
      oracle_dev = std::abs(e.estimate() - f);
    }
    record(z, "oracle", oracle_dev, oracle_tolerance);
  }
  return report;
}

}  // namespace reslab
