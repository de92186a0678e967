#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "substat/catalog.hpp"
#include "substat/errors.hpp"
#include "substat/functionals.hpp"
#include "substat/suite.hpp"

using namespace substat;
using nlohmann::json;

TEST_CASE("config parsing accepts the documented schema") {
  const json j = json::parse(R"({
    "schema": 1,
    "model": {
      "family": "reissner-nordstrom",
      "n": 3,
      "mass": 1.0,
      "charge": 0.5,
      "cross_section": {"kind": "round-sphere"}
    },
    "checks": ["vacuum-schwarzschild", "ends"],
    "tolerances": {"substatic": 1e-8},
    "output": {"format": "json", "path": ""}
  })");
  const auto cfg = suite::parse_config(j);
  CHECK(cfg.model.has_value());
  CHECK(cfg.model->family == models::Family::reissner_nordstrom);
  CHECK(cfg.model->charge == 0.5);
  CHECK(cfg.checks.size() == 2);
  CHECK(cfg.tolerances.at("substatic") == 1e-8);
}

TEST_CASE("surface specs parse from config") {
  const auto sph = suite::parse_surface(json::parse(R"({"type":"sphere","r":2.5})"));
  CHECK(sph.cos_coeffs.size() == 1);
  CHECK(sph.cos_coeffs[0] == 2.5);

  const auto cosine =
      suite::parse_surface(json::parse(R"({"type":"cosine","coeffs":[3.0,0.3],"nodes":128})"));
  CHECK(cosine.cos_coeffs.size() == 2);
  CHECK(cosine.nodes == 128);

  CHECK_THROWS_AS(suite::parse_surface(json::parse(R"({"type":"torus"})")), Error);
  CHECK_THROWS_AS(suite::parse_surface(json::parse(R"({"type":"sphere"})")), Error);
  CHECK_THROWS_AS(suite::parse_surface(json::parse(R"({"type":"sphere","r":2,"rr":1})")), Error);

  const auto cfg = suite::parse_config(json::parse(
      R"({"model":{"family":"schwarzschild","mass":0.5},"surface":{"type":"sphere","r":2.0}})"));
  CHECK(cfg.surface.has_value());
}

TEST_CASE("config parsing rejects unknown keys, names, and bad tolerances") {
  CHECK_THROWS_AS(suite::parse_config(json::parse(R"({"schema":1,"mdoel":{}})")), Error);
  CHECK_THROWS_AS(
      suite::parse_config(json::parse(R"({"model":{"family":"schwarzschild","massive":1}})")),
      Error);
  CHECK_THROWS_AS(suite::parse_config(json::parse(R"({"checks":["no-such-check"]})")), Error);
  CHECK_THROWS_AS(suite::parse_config(json::parse(R"({"tolerances":{"substatic":-1e-8}})")),
                  Error);
  CHECK_THROWS_AS(suite::parse_config(json::parse(R"({"schema":2})")), Error);
  CHECK_THROWS_AS(
      suite::parse_config(json::parse(R"({"output":{"format":"yaml"}})")), Error);
  CHECK_THROWS_AS(
      suite::parse_config(json::parse(R"({"model":{"family":"oscillating"}})")), Error);
}

TEST_CASE("series CSV is byte-stable with LF endings and 17 significant digits") {
  const auto flat = catalog::flat(3);
  std::vector<double> grid{0.5, 1.0, 2.0};
  const auto s = functionals::volume_functional(flat, functionals::Base::point(), grid, 3.0);

  std::ostringstream a, b;
  suite::emit_series_csv(s, a);
  suite::emit_series_csv(s, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 6) == "t,A,V\n");
  CHECK(a.str().find("\r") == std::string::npos);
  CHECK(a.str().find("0.5") != std::string::npos);

  // empty grid: header only
  functionals::ComparisonSeries empty;
  std::ostringstream e;
  suite::emit_series_csv(empty, e);
  CHECK(e.str() == "t,A,V\n");

  // JSON round-trip parses back to the same numbers
  const json doc = suite::series_to_json(s);
  const json doc2 = json::parse(doc.dump());
  CHECK(doc2 == doc);
  CHECK(doc2["rows"].size() == 3);
  CHECK(doc2["rows"][0]["A"].get<double>() == s.A[0]);
}

TEST_CASE("acceptance registry covers exactly the criteria list") {
  const std::set<std::string> expected = {
      "substatic-reissner-nordstrom",
      "vacuum-schwarzschild",
      "bishop-gromov-rigidity",
      "avr",
      "willmore",
      "isoperimetric",
      "heintze-karcher",
      "laplacian-comparison",
      "appendix-identities",
      "ends",
      "numerical-hygiene",
  };
  std::set<std::string> got;
  for (const auto& c : suite::acceptance_criteria()) {
    CHECK(!c.summary.empty());
    CHECK(c.run != nullptr);
    got.insert(c.name);
  }
  CHECK(got == expected);
}

TEST_CASE("check reports serialize with the exact field set") {
  const CheckReport rep = make_report("demo", 2.0, 1.0, 1.0, 1e-9, 1e-8, "ctx");
  const json j = rep.to_json();
  const std::set<std::string> keys = {"name",   "lhs",      "rhs",          "margin", "tol",
                                      "passed", "equality", "equality_tol", "context"};
  std::set<std::string> got;
  for (auto it = j.begin(); it != j.end(); ++it) got.insert(it.key());
  CHECK(got == keys);
  CHECK(j["passed"] == true);
  CHECK(j["equality"] == false);
}

TEST_CASE("identical inputs produce byte-identical report JSON") {
  const auto run_once = [] {
    std::ostringstream sink;
    const auto result = suite::run_acceptance_suite({"willmore"}, sink);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : result.results.front().reports) checks.push_back(r.to_json());
    return checks.dump();
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("report invariant: passed <=> margin >= -tol, equality => passed") {
  std::vector<CheckReport> reps;
  for (const auto& name : {"vacuum-schwarzschild", "willmore", "heintze-karcher", "ends"}) {
    std::ostringstream sink;
    const auto result = suite::run_acceptance_suite({name}, sink);
    for (const auto& r : result.results.front().reports) reps.push_back(r);
  }
  CHECK(reps.size() > 10);
  for (const auto& r : reps) {
    CHECK(r.passed == (r.margin >= -r.tol || r.equality));
    if (r.equality) CHECK(r.passed);
  }
}

TEST_CASE("a single fast criterion runs through the suite runner") {
  std::ostringstream progress;
  const auto result = suite::run_acceptance_suite({"vacuum-schwarzschild"}, progress);
  CHECK(result.results.size() == 1);
  CHECK(result.all_passed);
  CHECK(progress.str().find("PASS  vacuum-schwarzschild") != std::string::npos);
  const json doc = suite::suite_result_to_json(result);
  CHECK(doc["all_passed"] == true);
  CHECK(doc["criteria"].size() == 1);
}
