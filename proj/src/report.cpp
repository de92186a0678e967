#include "substat/report.hpp"

#include <cmath>

namespace substat {

CheckReport make_report(std::string name, double lhs, double rhs, double margin, double tol,
                        double equality_tol, std::string context) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.tol = tol;
  r.equality_tol = equality_tol;
  r.passed = margin >= -tol;
  r.equality = std::fabs(margin) < equality_tol;
  if (r.equality) r.passed = true;  // equality implies passed
  r.context = std::move(context);
  return r;
}

nlohmann::json CheckReport::to_json() const {
  return nlohmann::json{{"name", name},     {"lhs", lhs},
                        {"rhs", rhs},       {"margin", margin},
                        {"tol", tol},       {"passed", passed},
                        {"equality", equality}, {"equality_tol", equality_tol},
                        {"context", context}};
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  return arr;
}

}  // namespace substat
