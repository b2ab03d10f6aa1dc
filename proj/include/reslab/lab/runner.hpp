#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "reslab/lab/scenario.hpp"

namespace reslab::lab {

enum class Status { kPass, kFail, kSkipped };

std::string_view status_name(Status status);

/// One verification row. Ratio checks (continuation, herglotz) report the
/// worst measured/bound ratio with expected 0 and tolerance 1.
struct CheckReport {
  std::string scenario;
  std::string check;
  double lambda = 0.0;
  std::string r_or_interval;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Status status = Status::kSkipped;
  std::string reason;  // machine-readable skip code, empty otherwise
};

/// Evaluates one check at one energy. Module errors become skipped rows.
CheckReport run_check(const Scenario& scenario, Check check, double lambda);

/// One row per (check, lambda) in canonical order; `jobs` worker threads.
std::vector<CheckReport> run_scenario(const Scenario& scenario, int jobs = 1);

/// 0 when nothing failed, 1 otherwise (skips allowed).
int exit_code(const std::vector<CheckReport>& rows);

struct Summary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};
Summary summarize(const std::vector<CheckReport>& rows);

/// %.17g formatting used by every report.
std::string format_number(double x);

std::string to_csv(const std::vector<CheckReport>& rows);
nlohmann::json to_json(const std::vector<CheckReport>& rows);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json.
void write_reports(const std::vector<CheckReport>& rows, const std::filesystem::path& dir,
                   const std::string& stem);

struct TraceRow {
  double lambda;
  double r;
  double theta;
  double theta_prime_fd;
  double theta_prime_lorentzian;
};

/// theta_1 and its derivative (finite difference and Lorentzian) at
/// `samples` evenly spaced couplings of the scenario interval.
std::vector<TraceRow> lorentzian_trace(const Scenario& scenario, int samples);
std::string trace_to_csv(const std::vector<TraceRow>& rows);

}  // namespace reslab::lab
