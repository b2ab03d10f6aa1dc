#include "reslab/lab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "reslab/finite_rank.hpp"
#include "reslab/rank_one.hpp"

namespace reslab::lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFdStep = 1e-4;
constexpr double kTotalVariationRange = 1e6;
constexpr int kLorentzianSamples = 9;

ScalarHerglotzModel rank_one_model(const Scenario& s) {
  if (const auto* scalar = std::get_if<ScalarHerglotzModel>(&s.model)) return *scalar;
  const auto reduced = std::get<MatrixHerglotzModel>(s.model).as_rank_one();
  if (!reduced) {
    throw Error(ErrorCode::kUnsupportedModel, "rank-one checks need a scalar model or k = 1 with J = +1");
  }
  return *reduced;
}

MatrixHerglotzModel matrix_model(const Scenario& s) {
  if (const auto* m = std::get_if<MatrixHerglotzModel>(&s.model)) return *m;
  return MatrixHerglotzModel::from_scalar(std::get<ScalarHerglotzModel>(s.model));
}

std::string format_interval(double a, double b) {
  return "[" + format_number(a) + "," + format_number(b) + "]";
}

std::string format_complex(Complex z) {
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

std::vector<double> sample_points(double a, double b, int n) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument, "sampled checks need a finite coupling interval");
  }
  if (a == b) return {a};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

std::vector<double> distinct_real_points(const ResonanceSet& rs) {
  std::vector<double> out;
  for (const auto& p : rs.real_points()) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](double x) {
      return std::abs(x - p.alpha) <= kClusterTolerance * (1.0 + std::abs(x));
    });
    if (!seen) out.push_back(p.alpha);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Fills measured/expected/tolerance/r_or_interval; status is derived afterwards.
void evaluate(const Scenario& s, Check check, double lambda, CheckReport& row) {
  const double tol = s.tolerance(check);
  row.tolerance = tol;
  switch (check) {
    case Check::kEq1: {
      const auto bw = breit_wigner_check(rank_one_model(s), lambda, kFdStep, tol);
      row.r_or_interval = format_number(bw.resonance.alpha);
      row.measured = bw.derivative;
      row.expected = bw.target;
      return;
    }
    case Check::kLorentzian: {
      const auto model = rank_one_model(s);
      const auto rp = resonance_point(model, lambda);
      double worst = -1.0;
      for (double r : sample_points(s.a, s.b, kLorentzianSamples)) {
        const double exact = phase_derivative(rp, r);
        double fd = fd_phase_derivative(model, lambda, r, kFdStep);
        if (std::abs(fd - exact) > tol) fd = fd_phase_derivative_richardson(model, lambda, r, kFdStep);
        if (std::abs(fd - exact) > worst) {
          worst = std::abs(fd - exact);
          row.r_or_interval = format_number(r);
          row.measured = fd;
          row.expected = exact;
        }
      }
      return;
    }
    case Check::kTraceIdentity: {
      const auto model = rank_one_model(s);
      const Complex fp = eval_boundary_scalar(model, lambda);
      const auto rp = resonance_point_from_boundary(fp);
      double worst = -1.0;
      for (double r : sample_points(s.a, s.b, kLorentzianSamples)) {
        const double residual = trace_identity_check(model, lambda, r);
        if (residual > worst) {
          worst = residual;
          row.r_or_interval = format_number(r);
          row.measured = phase_derivative(rp, r);
          row.expected = -2.0 * (fp / (1.0 + r * fp)).imag();
        }
      }
      return;
    }
    case Check::kTotalVariation: {
      const auto model = rank_one_model(s);
      const auto trace = phase_trace(model, lambda, -kTotalVariationRange, kTotalVariationRange);
      row.r_or_interval = format_interval(-kTotalVariationRange, kTotalVariationRange);
      row.measured = trace.back() - trace.front();
      row.expected = total_phase_variation(model, lambda);
      return;
    }
    case Check::kEq2: {
      const auto result = eq2_check(matrix_model(s), lambda, s.a, s.b);
      row.r_or_interval = format_interval(s.a, s.b);
      row.measured = result.phase_sum;
      row.expected = result.lorentzian;
      return;
    }
    case Check::kSsf: {
      const auto model = matrix_model(s);
      const auto d = ssf_total(model, lambda, s.a, s.b);
      // Second route for the a.c. part: determinant phases between the real points.
      std::vector<double> cuts{s.a};
      for (const auto& c : d.contributing_real_points) {
        const double gap = 1e-10 * (1.0 + std::abs(c.r));
        cuts.push_back(c.r - gap);
        cuts.push_back(c.r + gap);
      }
      cuts.push_back(s.b);
      double phase_sum = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
        phase_sum += det_phase_sum(model, lambda, cuts[i], cuts[i + 1]);
      }
      row.r_or_interval = format_interval(s.a, s.b);
      row.measured = d.xi_total;
      row.expected = -phase_sum / (2.0 * kPi) + d.xi_singular;
      return;
    }
    case Check::kResonanceIndex: {
      const auto model = matrix_model(s);
      const auto rs = resonance_set(model, lambda);
      int measured = 0;
      int oracle = 0;
      std::string where;
      constexpr double kOracleY = 1e-3;
      for (double r : distinct_real_points(rs)) {
        if (!(r > s.a && r < s.b)) continue;
        measured += resonance_index(model, lambda, r);
        const double radius = 10.0 * std::sqrt(kOracleY) * (1.0 + std::abs(r));
        for (const auto& p : resonance_set_at(model, Complex{lambda, kOracleY}).points) {
          if (std::abs(p.value - r) <= radius) oracle += (p.beta > 0) - (p.beta < 0);
        }
        where += (where.empty() ? "" : ";") + format_number(r);
      }
      if (where.empty()) throw Error(ErrorCode::kNotAResonance, "no real resonance point in the interval");
      row.r_or_interval = where;
      row.measured = measured;
      row.expected = oracle;
      return;
    }
    case Check::kContinuation: {
      const auto report = continuation_pole_check(rank_one_model(s), lambda);
      row.r_or_interval = format_complex(report.resonance.value);
      row.measured = std::max({1e3 / report.min_near_pole, report.max_near_zero / 1e-3,
                               report.unitarity_defect / 1e-12});
      row.expected = 0.0;
      return;
    }
    case Check::kHerglotz: {
      const Complex samples[] = {{lambda, 1.0}, {lambda, 1e-1}, {lambda, 1e-2}};
      double ratio = 0.0;
      auto scan = [&](const ScalarHerglotzModel& m) {
        for (const auto& item : herglotz_selfcheck(m, samples, tol).items) {
          ratio = std::max(ratio, item.deviation / item.bound);
        }
      };
      if (const auto* scalar = std::get_if<ScalarHerglotzModel>(&s.model)) {
        scan(*scalar);
      } else {
        const auto& m = std::get<MatrixHerglotzModel>(s.model);
        for (const auto& t : m.terms()) scan(t.model);
        for (const auto& z : samples) {
          const ComplexMatrix b = eval_matrix_unsigned(m, z);
          const ComplexMatrix im = (b - b.adjoint()) / Complex{0.0, 2.0};
          Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(im, Eigen::EigenvaluesOnly);
          ratio = std::max(ratio, std::max(0.0, -es.eigenvalues().minCoeff()) / 1e-10);
        }
      }
      row.r_or_interval = "";
      row.measured = ratio;
      row.expected = 0.0;
      row.tolerance = 1.0;
      return;
    }
  }
}

}  // namespace

std::string_view status_name(Status status) {
  switch (status) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkipped: return "skipped";
  }
  return "unknown";
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CheckReport run_check(const Scenario& scenario, Check check, double lambda) {
  CheckReport row;
  row.scenario = scenario.name;
  row.check = std::string(check_name(check));
  row.lambda = lambda;
  row.tolerance = scenario.tolerance(check);
  try {
    evaluate(scenario, check, lambda, row);
    const double gap = std::abs(row.measured - row.expected);
    row.status = gap <= row.tolerance ? Status::kPass : Status::kFail;
  } catch (const Error& e) {
    row.status = Status::kSkipped;
    row.reason = std::string(reason_code(e.code()));
    row.measured = row.expected = std::nan("");
  } catch (const std::exception&) {
    row.status = Status::kSkipped;
    row.reason = "INTERNAL_ERROR";
    row.measured = row.expected = std::nan("");
  }
  return row;
}

std::vector<CheckReport> run_scenario(const Scenario& scenario, int jobs) {
  std::vector<std::pair<Check, double>> tasks;
  for (Check c : scenario.checks) {
    for (double lambda : scenario.lambda_grid) tasks.emplace_back(c, lambda);
  }
  std::vector<CheckReport> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = run_check(scenario, tasks[i].first, tasks[i].second);
    }
  };
  const int n = std::clamp(jobs, 1, 64);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return rows;
}

int exit_code(const std::vector<CheckReport>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.status == Status::kFail; }) ? 1 : 0;
}

Summary summarize(const std::vector<CheckReport>& rows) {
  Summary s;
  for (const auto& r : rows) {
    switch (r.status) {
      case Status::kPass: ++s.passed; break;
      case Status::kFail: ++s.failed; break;
      case Status::kSkipped: ++s.skipped; break;
    }
  }
  return s;
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) { return std::isnan(x) ? "" : format_number(x); }

nlohmann::json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}
}  // namespace

std::string to_csv(const std::vector<CheckReport>& rows) {
  std::string out = "scenario,check,lambda,r_or_interval,measured,expected,tolerance,status,reason\n";
  for (const auto& r : rows) {
    out += csv_field(r.scenario) + ',' + r.check + ',' + format_number(r.lambda) + ',' +
           csv_field(r.r_or_interval) + ',' + csv_number(r.measured) + ',' + csv_number(r.expected) + ',' +
           format_number(r.tolerance) + ',' + std::string(status_name(r.status)) + ',' + r.reason + '\n';
  }
  return out;
}

nlohmann::json to_json(const std::vector<CheckReport>& rows) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : rows) {
    list.push_back({{"scenario", r.scenario},
                    {"check", r.check},
                    {"lambda", r.lambda},
                    {"r_or_interval", r.r_or_interval},
                    {"measured", json_number(r.measured)},
                    {"expected", json_number(r.expected)},
                    {"tolerance", r.tolerance},
                    {"status", std::string(status_name(r.status))},
                    {"reason", r.reason}});
  }
  const auto s = summarize(rows);
  return {{"rows", list},
          {"summary", {{"pass", s.passed}, {"fail", s.failed}, {"skipped", s.skipped}}},
          {"exit_code", exit_code(rows)}};
}

void write_reports(const std::vector<CheckReport>& rows, const std::filesystem::path& dir,
                   const std::string& stem) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
    out << text;
  };
  write(dir / (stem + ".csv"), to_csv(rows));
  write(dir / (stem + ".json"), to_json(rows).dump(2) + "\n");
}

std::vector<TraceRow> lorentzian_trace(const Scenario& scenario, int samples) {
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "trace needs at least two samples");
  const auto model = rank_one_model(scenario);
  std::vector<TraceRow> rows;
  for (double lambda : scenario.lambda_grid) {
    const Complex fp = eval_boundary_scalar(model, lambda);
    const auto trace = phase_trace(model, lambda, scenario.a, scenario.b);
    const auto rp = resonance_point_from_boundary(fp);
    for (double r : sample_points(scenario.a, scenario.b, samples)) {
      // Nodes are at most pi/4 apart in phase, so the nearest node fixes the branch.
      auto it = std::lower_bound(trace.grid.begin(), trace.grid.end(), r);
      if (it == trace.grid.end()) --it;
      const auto j = static_cast<std::size_t>(it - trace.grid.begin());
      const double theta = trace.theta[j] + std::arg(scattering_eigenvalue_from_boundary(fp, r) /
                                                     scattering_eigenvalue_from_boundary(fp, trace.grid[j]));
      rows.push_back({lambda, r, theta, fd_phase_derivative(model, lambda, r, kFdStep), phase_derivative(rp, r)});
    }
  }
  return rows;
}

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  std::string out = "lambda,r,theta,theta_prime_fd,theta_prime_lorentzian\n";
  for (const auto& r : rows) {
    out += format_number(r.lambda) + ',' + format_number(r.r) + ',' + format_number(r.theta) + ',' +
           format_number(r.theta_prime_fd) + ',' + format_number(r.theta_prime_lorentzian) + '\n';
  }
  return out;
}

}  // namespace reslab::lab
