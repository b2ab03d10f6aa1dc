#include "reslab/lab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace reslab::lab {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(path, "expected a number");
}

double number_field(const json& j, const std::string& path, const char* key) {
  return number(field(j, path, key), path + "." + key);
}

double optional_number(const json& j, const std::string& path, const char* key, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, path + "." + key);
}

Complex complex_entry(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "complex entries are [re, im]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
  }
  return {number(j, path), 0.0};
}

// Runs a model constructor and rewrites its validation errors with the JSON path.
template <typename F>
auto build(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return x;
}

}  // namespace

std::string_view check_name(Check check) {
  switch (check) {
    case Check::kEq1: return "eq1";
    case Check::kLorentzian: return "lorentzian";
    case Check::kTraceIdentity: return "trace_identity";
    case Check::kTotalVariation: return "total_variation";
    case Check::kEq2: return "eq2";
    case Check::kSsf: return "ssf";
    case Check::kResonanceIndex: return "resonance_index";
    case Check::kContinuation: return "continuation";
    case Check::kHerglotz: return "herglotz";
  }
  return "unknown";
}

std::optional<Check> parse_check(std::string_view name) {
  for (Check c : kAllChecks) {
    if (check_name(c) == name) return c;
  }
  return std::nullopt;
}

double default_tolerance(Check check) {
  switch (check) {
    case Check::kEq1: return 1e-6;
    case Check::kLorentzian: return 1e-6;
    case Check::kTraceIdentity: return 1e-10;
    case Check::kTotalVariation: return 1e-4;
    case Check::kEq2: return 1e-6;
    case Check::kSsf: return 1e-9;
    case Check::kResonanceIndex: return 0.0;
    case Check::kContinuation: return 1.0;
    case Check::kHerglotz: return 1e-8;
  }
  return 0.0;
}

double Scenario::tolerance(Check check) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? default_tolerance(check) : it->second;
}

ScalarHerglotzModel parse_scalar_model(const json& j, const std::string& path) {
  const auto& type_field = field(j, path, "type");
  if (!type_field.is_string()) fail(path + ".type", "expected a string");
  const auto type = type_field.get<std::string>();
  const double mass = optional_number(j, path, "mass", 1.0);
  if (type == "cauchy") {
    const double center = optional_number(j, path, "center", 0.0);
    const double scale = optional_number(j, path, "scale", 1.0);
    return build(path, [&] { return ScalarHerglotzModel::cauchy(center, scale, mass); });
  }
  if (type == "semicircle") {
    const double halfwidth = optional_number(j, path, "halfwidth", 2.0);
    return build(path, [&] { return ScalarHerglotzModel::semicircle(halfwidth, mass); });
  }
  if (type == "uniform") {
    const double a = number_field(j, path, "a");
    const double b = number_field(j, path, "b");
    return build(path, [&] { return ScalarHerglotzModel::uniform(a, b, mass); });
  }
  if (type == "point_masses") {
    const auto& list = field(j, path, "masses");
    if (!list.is_array()) fail(path + ".masses", "expected an array of [position, weight]");
    std::vector<ScalarHerglotzModel::PointMass> masses;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = path + ".masses[" + std::to_string(i) + "]";
      const auto& m = list[i];
      if (m.is_array() && m.size() == 2) {
        masses.push_back({number(m[0], p + "[0]"), number(m[1], p + "[1]")});
      } else if (m.is_object()) {
        masses.push_back({number_field(m, p, "position"), number_field(m, p, "weight")});
      } else {
        fail(p, "expected [position, weight]");
      }
    }
    return build(path, [&] { return ScalarHerglotzModel::point_masses(std::move(masses)); });
  }
  if (type == "combination") {
    const auto& list = field(j, path, "terms");
    if (!list.is_array()) fail(path + ".terms", "expected an array");
    std::vector<ScalarHerglotzModel::Term> terms;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      const double weight = number_field(list[i], p, "weight");
      terms.push_back({weight, parse_scalar_model(field(list[i], p, "model"), p + ".model")});
    }
    return build(path, [&] { return ScalarHerglotzModel::combination(std::move(terms)); });
  }
  if (type == "matrix") fail(path, "matrix model not allowed here");
  fail(path + ".type", "unknown model type \"" + type + "\"");
}

MatrixHerglotzModel parse_matrix_model(const json& j, const std::string& path) {
  const auto& jj = field(j, path, "J");
  if (!jj.is_array() || jj.empty()) fail(path + ".J", "expected a non-empty array");
  std::vector<int> signature;
  for (std::size_t i = 0; i < jj.size(); ++i) {
    const double s = number(jj[i], path + ".J[" + std::to_string(i) + "]");
    if (s != 1.0 && s != -1.0) fail(path + ".J", "signature entries must be ±1");
    signature.push_back(static_cast<int>(s));
  }
  const auto k = static_cast<Eigen::Index>(signature.size());
  const auto& list = field(j, path, "terms");
  if (!list.is_array()) fail(path + ".terms", "expected an array");
  std::vector<MatrixHerglotzModel::Term> terms;
  for (std::size_t t = 0; t < list.size(); ++t) {
    const std::string p = path + ".terms[" + std::to_string(t) + "]";
    const auto& cj = field(list[t], p, "C");
    if (!cj.is_array() || static_cast<Eigen::Index>(cj.size()) != k) fail(p + ".C", "expected k rows");
    ComplexMatrix c(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto& row = cj[r];
      const std::string rp = p + ".C[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k) fail(rp, "expected k entries");
      for (Eigen::Index col = 0; col < k; ++col) {
        c(r, col) = complex_entry(row[col], rp + "[" + std::to_string(col) + "]");
      }
    }
    terms.push_back({std::move(c), parse_scalar_model(field(list[t], p, "model"), p + ".model")});
  }
  return build(path, [&] { return MatrixHerglotzModel(std::move(signature), std::move(terms)); });
}

ModelSpec parse_model(const json& j, const std::string& path) {
  const auto& type = field(j, path, "type");
  if (type.is_string() && type.get<std::string>() == "matrix") return parse_matrix_model(j, path);
  return parse_scalar_model(j, path);
}

json model_to_json(const ScalarHerglotzModel& model) {
  using M = ScalarHerglotzModel;
  return std::visit(
      overloaded{
          [](const M::Cauchy& m) -> json {
            return {{"type", "cauchy"}, {"center", m.center}, {"scale", m.scale}, {"mass", m.mass}};
          },
          [](const M::Semicircle& m) -> json {
            return {{"type", "semicircle"}, {"halfwidth", m.halfwidth}, {"mass", m.mass}};
          },
          [](const M::Uniform& m) -> json {
            return {{"type", "uniform"}, {"a", m.a}, {"b", m.b}, {"mass", m.mass}};
          },
          [](const M::PointMasses& m) -> json {
            json list = json::array();
            for (const auto& p : m.masses) list.push_back({p.position, p.weight});
            return {{"type", "point_masses"}, {"masses", list}};
          },
          [](const M::Combination& m) -> json {
            json list = json::array();
            for (const auto& t : m.terms) list.push_back({{"weight", t.weight}, {"model", model_to_json(t.model)}});
            return {{"type", "combination"}, {"terms", list}};
          },
      },
      model.variant());
}

json model_to_json(const MatrixHerglotzModel& model) {
  json terms = json::array();
  for (const auto& t : model.terms()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < t.weight.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < t.weight.cols(); ++c) {
        const Complex v = t.weight(r, c);
        if (v.imag() == 0.0) {
          row.push_back(v.real());
        } else {
          row.push_back({v.real(), v.imag()});
        }
      }
      rows.push_back(row);
    }
    terms.push_back({{"C", rows}, {"model", model_to_json(t.model)}});
  }
  return {{"type", "matrix"}, {"J", model.signature()}, {"terms", terms}};
}

json scenario_to_json(const Scenario& s) {
  json checks = json::array();
  for (Check c : s.checks) checks.push_back(std::string(check_name(c)));
  json tolerances = json::object();
  for (const auto& [c, tol] : s.tolerances) tolerances[std::string(check_name(c))] = tol;
  return {
      {"name", s.name},
      {"model", std::visit([](const auto& m) { return model_to_json(m); }, s.model)},
      {"lambda_grid", s.lambda_grid},
      {"interval", {number_to_json(s.a), number_to_json(s.b)}},
      {"checks", checks},
      {"tolerances", tolerances},
  };
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("scenario", "expected a JSON object");
  static const char* kKnown[] = {"name", "model", "lambda_grid", "interval", "checks", "tolerances"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) ==
        std::end(kKnown)) {
      fail("scenario", "unknown field \"" + key + "\"");
    }
  }

  Scenario s{.name = "", .model = ScalarHerglotzModel::cauchy(0.0, 1.0), .lambda_grid = {}, .checks = {}, .tolerances = {}};
  const auto& name = field(j, "scenario", "name");
  if (!name.is_string() || name.get<std::string>().empty()) fail("name", "expected a non-empty string");
  s.name = name.get<std::string>();
  s.model = parse_model(field(j, "scenario", "model"));

  const auto& grid = field(j, "scenario", "lambda_grid");
  if (!grid.is_array() || grid.empty()) fail("lambda_grid", "expected a non-empty array");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = number(grid[i], "lambda_grid[" + std::to_string(i) + "]");
    if (!std::isfinite(x)) fail("lambda_grid", "energies must be finite");
    s.lambda_grid.push_back(x);
  }
  std::sort(s.lambda_grid.begin(), s.lambda_grid.end());
  s.lambda_grid.erase(std::unique(s.lambda_grid.begin(), s.lambda_grid.end()), s.lambda_grid.end());

  const auto& interval = field(j, "scenario", "interval");
  if (!interval.is_array() || interval.size() != 2) fail("interval", "expected [a, b]");
  s.a = number(interval[0], "interval[0]");
  s.b = number(interval[1], "interval[1]");
  if (!(s.a <= s.b)) fail("interval", "requires a <= b");

  const auto& checks = field(j, "scenario", "checks");
  if (!checks.is_array() || checks.empty()) fail("checks", "expected a non-empty array");
  std::vector<bool> seen(std::size(kAllChecks), false);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!checks[i].is_string()) fail("checks[" + std::to_string(i) + "]", "expected a string");
    const auto c = parse_check(checks[i].get<std::string>());
    if (!c) fail("checks[" + std::to_string(i) + "]", "unknown check \"" + checks[i].get<std::string>() + "\"");
    seen[static_cast<std::size_t>(*c)] = true;
  }
  for (Check c : kAllChecks) {
    if (seen[static_cast<std::size_t>(c)]) s.checks.push_back(c);
  }

  if (const auto it = j.find("tolerances"); it != j.end()) {
    if (!it->is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, value] : it->items()) {
      const auto c = parse_check(key);
      if (!c) fail("tolerances", "unknown check \"" + key + "\"");
      const double tol = number(value, "tolerances." + key);
      if (!(tol >= 0.0)) fail("tolerances." + key, "tolerance must be non-negative");
      s.tolerances[*c] = tol;
    }
  }
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  return parse_scenario(j);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.filename().string() + ": " + e.what());
  }
}

}  // namespace reslab::lab
