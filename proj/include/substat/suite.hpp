#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "substat/functionals.hpp"
#include "substat/models.hpp"
#include "substat/report.hpp"
#include "substat/surfaces.hpp"

namespace substat::suite {

struct OutputSpec {
  std::string format = "json";  // "json" | "csv"
  std::string path;             // empty: stdout
};

struct SuiteConfig {
  int schema = 1;
  std::optional<models::ModelSpec> model;
  std::optional<surfaces::RadialGraphSurface> surface;
  std::vector<std::string> checks;             // empty: run everything
  std::map<std::string, double> tolerances;    // positive overrides for ad-hoc checks
  OutputSpec output;
};

models::ModelSpec parse_model(const nlohmann::json& j);
// {"type": "sphere", "r": ...} or {"type": "cosine", "coeffs": [...]}
surfaces::RadialGraphSurface parse_surface(const nlohmann::json& j);
SuiteConfig parse_config(const nlohmann::json& j);
SuiteConfig load_config_file(const std::string& path);

// CSV with header t,A,V; 17 significant digits, LF endings, '.' decimals.
void emit_series_csv(const functionals::ComparisonSeries& series, std::ostream& os);
nlohmann::json series_to_json(const functionals::ComparisonSeries& series);
void write_output(const nlohmann::json& doc, const OutputSpec& out);

// One registered acceptance criterion; `run` is self-contained and returns the
// per-check reports for the criterion.
struct Criterion {
  std::string name;
  std::string summary;
  std::function<std::vector<CheckReport>()> run;
};

const std::vector<Criterion>& acceptance_criteria();

struct CriterionResult {
  std::string name;
  std::vector<CheckReport> reports;
  bool passed = false;
  double seconds = 0.0;
};

struct SuiteResult {
  std::vector<CriterionResult> results;
  bool all_passed = false;
  double seconds = 0.0;
};

// Runs the registered criteria (all, or the named subset), printing one
// PASS/FAIL line per criterion to `progress`.
SuiteResult run_acceptance_suite(const std::vector<std::string>& only, std::ostream& progress);

nlohmann::json suite_result_to_json(const SuiteResult& result);

}  // namespace substat::suite
