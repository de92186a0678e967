#pragma once

#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace substat {

// Outcome of a named verification. Sign convention: margin = lhs - rhs for
// ">=" checks, and pass iff margin >= -tol.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tol = 1e-9;
  bool passed = false;
  bool equality = false;
  double equality_tol = 1e-8;
  std::string context;

  nlohmann::json to_json() const;
};

CheckReport make_report(std::string name, double lhs, double rhs, double margin, double tol,
                        double equality_tol, std::string context = {});

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace substat
