// lab: run resonance/phase verification scenarios and emit CSV + JSON reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reslab/lab/corpus.hpp"
#include "reslab/lab/runner.hpp"

#ifndef RESLAB_SCENARIO_DIR
#define RESLAB_SCENARIO_DIR "scenarios"
#endif

namespace {

using namespace reslab::lab;

constexpr int kConfigErrorExit = 2;

void print_summary(const std::string& label, const std::vector<CheckReport>& rows) {
  const auto s = summarize(rows);
  std::printf("%-32s pass=%d fail=%d skipped=%d\n", label.c_str(), s.passed, s.failed, s.skipped);
  for (const auto& r : rows) {
    if (r.status == Status::kFail) {
      std::printf("  FAIL %s lambda=%s measured=%s expected=%s tol=%s\n", r.check.c_str(),
                  format_number(r.lambda).c_str(), format_number(r.measured).c_str(),
                  format_number(r.expected).c_str(), format_number(r.tolerance).c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance-point verification lab"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "lab_out";
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", scenario_path, "Scenario JSON")->required();
  run->add_option("--out", out_dir, "Report directory");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string scenario_dir = RESLAB_SCENARIO_DIR;
  auto* corpus = app.add_subcommand("corpus", "Run the bundled scenarios and the seeded generated corpus");
  corpus->add_option("--out", out_dir, "Report directory");
  corpus->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  corpus->add_option("--scenarios", scenario_dir, "Directory of bundled scenario files");

  std::string check = "lorentzian";
  int samples = 101;
  std::string trace_out;
  auto* trace = app.add_subcommand("trace", "Emit theta_1 and its derivative over the coupling interval");
  trace->add_option("scenario", scenario_path, "Scenario JSON")->required();
  trace->add_option("--check", check, "Trace kind")->check(CLI::IsMember({"lorentzian"}));
  trace->add_option("--samples", samples, "Samples per energy")->check(CLI::Range(2, 1000000));
  trace->add_option("--out", trace_out, "CSV file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigErrorExit;
  }

  try {
    if (*run) {
      const auto scenario = load_scenario(scenario_path);
      const auto rows = run_scenario(scenario, jobs);
      write_reports(rows, out_dir, scenario.name);
      print_summary(scenario.name, rows);
      return exit_code(rows);
    }
    if (*corpus) {
      auto scenarios = load_scenario_dir(scenario_dir);
      for (auto& s : generated_scenarios(seed_from_env())) scenarios.push_back(std::move(s));
      std::vector<CheckReport> all;
      for (const auto& s : scenarios) {
        const auto rows = run_scenario(s, jobs);
        print_summary(s.name, rows);
        all.insert(all.end(), rows.begin(), rows.end());
      }
      write_reports(all, out_dir, "corpus");
      const auto s = summarize(all);
      std::printf("corpus: %zu scenarios, pass=%d fail=%d skipped=%d\n", scenarios.size(), s.passed,
                  s.failed, s.skipped);
      return exit_code(all);
    }
    if (*trace) {
      const auto scenario = load_scenario(scenario_path);
      const auto csv = trace_to_csv(lorentzian_trace(scenario, samples));
      if (trace_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(trace_out, std::ios::binary) << csv;
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
