#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "reslab/errors.hpp"
#include "reslab/herglotz.hpp"

namespace reslab::lab {

enum class Check {
  kEq1,
  kLorentzian,
  kTraceIdentity,
  kTotalVariation,
  kEq2,
  kSsf,
  kResonanceIndex,
  kContinuation,
  kHerglotz,
};

inline constexpr Check kAllChecks[] = {Check::kEq1,          Check::kLorentzian, Check::kTraceIdentity,
                                       Check::kTotalVariation, Check::kEq2,      Check::kSsf,
                                       Check::kResonanceIndex, Check::kContinuation,
                                       Check::kHerglotz};

std::string_view check_name(Check check);
std::optional<Check> parse_check(std::string_view name);
double default_tolerance(Check check);

using ModelSpec = std::variant<ScalarHerglotzModel, MatrixHerglotzModel>;

struct Scenario {
  std::string name;
  ModelSpec model;
  std::vector<double> lambda_grid;
  double a = 0.0;
  double b = 0.0;
  std::vector<Check> checks;  // canonical order, no duplicates
  std::map<Check, double> tolerances;

  double tolerance(Check check) const;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::kConfig, what) {}
};

ScalarHerglotzModel parse_scalar_model(const nlohmann::json& j, const std::string& path = "model");
MatrixHerglotzModel parse_matrix_model(const nlohmann::json& j, const std::string& path = "model");
ModelSpec parse_model(const nlohmann::json& j, const std::string& path = "model");

nlohmann::json model_to_json(const ScalarHerglotzModel& model);
nlohmann::json model_to_json(const MatrixHerglotzModel& model);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Validates and fills defaults. Throws ConfigError.
Scenario parse_scenario(const nlohmann::json& j);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace reslab::lab
