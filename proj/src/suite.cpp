#include "substat/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "substat/catalog.hpp"
#include "substat/conformal.hpp"
#include "substat/curvature.hpp"
#include "substat/errors.hpp"
#include "substat/inequalities.hpp"
#include "substat/quadrature.hpp"
#include "substat/surfaces.hpp"

namespace substat::suite {

using nlohmann::json;

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) fail(ErrorCode::ConfigError, "unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

models::ModelSpec parse_model(const json& j) {
  reject_unknown_keys(j, {"family", "n", "lambda", "mass", "charge", "cross_section",
                          "profile_table"},
                      "model");
  models::ModelSpec spec;
  if (!j.contains("family")) fail(ErrorCode::ConfigError, "model needs a 'family'");
  spec.family = models::family_from_string(j.at("family").get<std::string>());
  spec.n = j.value("n", 3);
  spec.lambda = j.value("lambda", 0.0);
  spec.mass = j.value("mass", 0.0);
  spec.charge = j.value("charge", 0.0);
  if (j.contains("cross_section")) {
    const json& cs = j.at("cross_section");
    reject_unknown_keys(cs, {"kind", "unit_area", "einstein_const"}, "cross_section");
    const std::string kind = cs.value("kind", "round-sphere");
    if (kind == "round-sphere") {
      spec.cross_section = models::CrossSection::round_sphere(spec.n - 1);
    } else if (kind == "einstein") {
      spec.cross_section.kind = "einstein";
      spec.cross_section.dim = spec.n - 1;
      spec.cross_section.unit_area =
          cs.value("unit_area", models::unit_sphere_area(spec.n - 1));
      spec.cross_section.einstein_const = cs.value("einstein_const", 1.0);
    } else {
      fail(ErrorCode::ConfigError, "cross_section kind must be 'round-sphere' or 'einstein'");
    }
  } else {
    spec.cross_section = models::CrossSection::round_sphere(spec.n - 1);
  }
  if (j.contains("profile_table")) {
    for (const auto& row : j.at("profile_table")) {
      if (!row.is_array() || row.size() != 3)
        fail(ErrorCode::ConfigError, "profile_table rows must be [r, f, b]");
      spec.profile_table.push_back({row[0].get<double>(), row[1].get<double>(),
                                    row[2].get<double>()});
    }
  }
  return spec;
}

surfaces::RadialGraphSurface parse_surface(const json& j) {
  reject_unknown_keys(j, {"type", "r", "coeffs", "nodes"}, "surface");
  const std::string type = j.value("type", "sphere");
  const int nodes = j.value("nodes", 96);
  if (type == "sphere") {
    if (!j.contains("r")) fail(ErrorCode::ConfigError, "sphere surface needs 'r'");
    return surfaces::RadialGraphSurface::sphere(j.at("r").get<double>(), nodes);
  }
  if (type == "cosine") {
    if (!j.contains("coeffs")) fail(ErrorCode::ConfigError, "cosine surface needs 'coeffs'");
    std::vector<double> coeffs = j.at("coeffs").get<std::vector<double>>();
    if (coeffs.empty()) fail(ErrorCode::ConfigError, "cosine surface needs >= 1 coefficient");
    return surfaces::RadialGraphSurface::cosine(std::move(coeffs), nodes);
  }
  fail(ErrorCode::ConfigError, "surface type must be 'sphere' or 'cosine'");
}

SuiteConfig parse_config(const json& j) {
  reject_unknown_keys(j, {"schema", "model", "surface", "checks", "tolerances", "output"},
                      "config");
  SuiteConfig cfg;
  cfg.schema = j.value("schema", 1);
  if (cfg.schema != 1) fail(ErrorCode::ConfigError, "unsupported config schema");
  if (j.contains("model")) cfg.model = parse_model(j.at("model"));
  if (j.contains("surface")) cfg.surface = parse_surface(j.at("surface"));
  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      const std::string name = c.is_string() ? c.get<std::string>() : c.at("name").get<std::string>();
      bool known = false;
      for (const auto& crit : acceptance_criteria()) known = known || crit.name == name;
      if (!known) fail(ErrorCode::ConfigError, "unknown check name '" + name + "'");
      cfg.checks.push_back(name);
    }
  }
  if (j.contains("tolerances")) {
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
      const double v = it.value().get<double>();
      if (!(v > 0)) fail(ErrorCode::ConfigError, "tolerance overrides must be positive");
      cfg.tolerances[it.key()] = v;
    }
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown_keys(o, {"format", "path"}, "output");
    cfg.output.format = o.value("format", "json");
    cfg.output.path = o.value("path", "");
    if (cfg.output.format != "json" && cfg.output.format != "csv")
      fail(ErrorCode::ConfigError, "output format must be 'json' or 'csv'");
  }
  return cfg;
}

SuiteConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void emit_series_csv(const functionals::ComparisonSeries& series, std::ostream& os) {
  os << "t,A,V\n";
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    os << fmt17(series.t[i]) << ',' << fmt17(series.A[i]) << ','
       << fmt17(i < series.V.size() ? series.V[i] : std::nan("")) << '\n';
  }
}

json series_to_json(const functionals::ComparisonSeries& series) {
  json rows = json::array();
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    json row{{"t", series.t[i]}, {"A", series.A[i]}};
    if (i < series.V.size()) row["V"] = series.V[i];
    rows.push_back(row);
  }
  return json{{"base", series.base},
              {"n", series.n},
              {"k", series.k},
              {"monotone_A", series.monotone_A},
              {"monotone_V", series.monotone_V},
              {"rows", rows}};
}

void write_output(const json& doc, const OutputSpec& out) {
  if (out.path.empty()) return;
  std::ofstream os(out.path, std::ios::binary);
  if (!os) fail(ErrorCode::IoError, "cannot write " + out.path);
  os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

namespace {

using catalog::ProfileTriple;
using curvature::FrameTensor2;

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

ProfileTriple schwarzschild(int n, double m) {
  models::ModelSpec spec;
  spec.family = models::Family::schwarzschild;
  spec.n = n;
  spec.mass = m;
  spec.cross_section = models::CrossSection::round_sphere(n - 1);
  return models::build_model(spec);
}

ProfileTriple reissner_nordstrom(int n, double m, double q) {
  models::ModelSpec spec;
  spec.family = models::Family::reissner_nordstrom;
  spec.n = n;
  spec.mass = m;
  spec.charge = q;
  spec.cross_section = models::CrossSection::round_sphere(n - 1);
  return models::build_model(spec);
}

ProfileTriple schwarzschild_ads(int n, double m, double lambda) {
  models::ModelSpec spec;
  spec.family = models::Family::schwarzschild_ads;
  spec.n = n;
  spec.mass = m;
  spec.lambda = lambda;
  spec.cross_section = models::CrossSection::round_sphere(n - 1);
  return models::build_model(spec);
}

ProfileTriple spline_roundtrip_model() {
  // Schwarzschild m = 0.5 sampled on [1.5, 20] and rebuilt through the spline path
  models::ModelSpec spec;
  spec.family = models::Family::custom;
  spec.n = 3;
  spec.cross_section = models::CrossSection::round_sphere(2);
  const int kSamples = 2400;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = 1.5 * std::pow(20.0 / 1.5, double(i) / kSamples);
    spec.profile_table.push_back({r, std::sqrt(1.0 - 1.0 / r), r});
  }
  return models::build_model(spec);
}

double dual_path_disagreement(const ProfileTriple& t, std::span<const double> grid) {
  double worst = 0.0;
  for (double r : grid) {
    if (!curvature::fd_oracle_applicable(t, r)) continue;
    const FrameTensor2 cf = curvature::ricci(t, r);
    const FrameTensor2 fd = curvature::fd_curvature_oracle(t, r);
    worst = std::max(worst, std::fabs(cf.rad_rad - fd.rad_rad) / (1.0 + std::fabs(fd.rad_rad)));
    worst = std::max(worst, std::fabs(cf.tan_tan - fd.tan_tan) / (1.0 + std::fabs(fd.tan_tan)));
  }
  return worst;
}

std::vector<CheckReport> crit_substatic_rn() {
  std::vector<CheckReport> reps;
  const ProfileTriple t = reissner_nordstrom(3, 1.0, 0.5);
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = log_grid(1.05 * t.r_min, 50.0 * t.r_min, 100);

  reps.push_back(curvature::check_substatic(t, grid, 1e-9));

  double max_rad = 0.0, min_tan = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const FrameTensor2 q = curvature::substatic_tensor(t, r);
    max_rad = std::max(max_rad, std::fabs(q.rad_rad));
    min_tan = std::min(min_tan, q.tan_tan);
  }
  reps.push_back(make_report("radial-equality", max_rad, 0.0, 1e-8 - max_rad, 1e-15, 1e-15,
                             "sup |Q.rad_rad| on the grid"));
  reps.push_back(make_report("tangential-nonnegative", min_tan, 0.0, min_tan, 1e-12, 1e-15,
                             "min Q.tan_tan on the grid"));

  const double worst = dual_path_disagreement(t, grid);
  reps.push_back(make_report("dual-path-agreement", worst, 0.0, 1e-6 - worst, 1e-15, 1e-15,
                             "closed form vs fd oracle, relative to 1+|fd|"));

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  reps.push_back(make_report("runtime", secs, 5.0, 5.0 - secs, 1e-15, 1e-15, "seconds"));
  return reps;
}

std::vector<CheckReport> crit_vacuum_schwarzschild() {
  std::vector<CheckReport> reps;
  const ProfileTriple t = schwarzschild(3, 1.0);
  const auto grid = log_grid(1.05 * t.r_min, 50.0 * t.r_min, 100);
  double sup = 0.0;
  for (double r : grid) {
    const FrameTensor2 q = curvature::substatic_tensor(t, r);
    sup = std::max({sup, std::fabs(q.rad_rad), std::fabs(q.tan_tan)});
  }
  reps.push_back(make_report("vacuum-staticity", sup, 0.0, 1e-8 - sup, 1e-15, 1e-15,
                             "sup |Q| over the grid (equality case)"));
  return reps;
}

std::vector<CheckReport> crit_bishop_gromov() {
  std::vector<CheckReport> reps;
  const ProfileTriple t = schwarzschild(3, 0.5);
  const auto base = functionals::Base::sphere(2.0);
  const auto t_grid = log_grid(0.1, 1e3, 50);

  const auto series_n = functionals::volume_functional(t, base, t_grid, 3.0);
  double max_dev_A = 0.0, max_dev_VA = 0.0;
  for (std::size_t i = 0; i < series_n.t.size(); ++i) {
    max_dev_A = std::max(max_dev_A, std::fabs(series_n.A[i] - 1.0));
    max_dev_VA = std::max(max_dev_VA, std::fabs(series_n.V[i] - series_n.A[i]));
  }
  reps.push_back(make_report("area-constant-one", max_dev_A, 0.0, 1e-6 - max_dev_A, 1e-15, 1e-15,
                             "sup |A - 1| on the t-grid"));
  reps.push_back(make_report("area-monotone", series_n.worst_forward_diff_A, 0.0,
                             1e-9 - series_n.worst_forward_diff_A, 1e-15, 1e-15,
                             "worst forward difference of A"));
  reps.push_back(make_report("volume-equals-area", max_dev_VA, 0.0, 1e-6 - max_dev_VA, 1e-15,
                             1e-15, "sup |V - A| at k = n"));

  for (double k : {1.0, 1.5, 3.0}) {
    const auto s = functionals::volume_functional(t, base, t_grid, k);
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.t.size(); ++i)
      min_margin = std::min(min_margin, s.V[i] - (3.0 / k) * s.A[i]);
    std::ostringstream name;
    name << "volume-area-bound-k" << k;
    reps.push_back(make_report(name.str(), min_margin, 0.0, min_margin, 1e-9, 1e-15,
                               "min of V - (n/k) A"));
    double worst_fd = s.worst_forward_diff_V;
    std::ostringstream name2;
    name2 << "volume-monotone-k" << k;
    reps.push_back(
        make_report(name2.str(), worst_fd, 0.0, 1e-9 - worst_fd, 1e-15, 1e-15,
                    "worst forward difference of V"));
  }
  return reps;
}

std::vector<CheckReport> crit_avr() {
  std::vector<CheckReport> reps;
  const ProfileTriple t = schwarzschild(3, 0.5);
  const auto est = functionals::avr_estimate(t, functionals::Base::sphere(2.0));
  reps.push_back(make_report("avr-schwarzschild-one", est.value, 1.0,
                             1e-6 - std::fabs(est.value - 1.0), 1e-15, 1e-15,
                             "extrapolated AVR, error bar " + std::to_string(est.error_bar) +
                                 ", certified: " + (est.certified ? "yes" : "no")));

  const double r0s[] = {2.0, 3.0, 5.0};
  reps.push_back(functionals::avr_base_independence(t, r0s, 1e-6));

  const ProfileTriple tw = catalog::twisted_product(3);
  const auto base = functionals::Base::sphere(1.0, 1.0);
  const auto est_tw = functionals::avr_estimate(tw, base);
  reps.push_back(make_report("avr-twisted-vanishes", est_tw.value, 0.0,
                             1e-6 - std::fabs(est_tw.value), 1e-15, 1e-15,
                             "twisted product AVR estimate"));

  const auto series = functionals::area_functional(tw, base, log_grid(1.0, 500.0, 40));
  double dev = 0.0;
  const double n1 = series.n - 1.0;
  const double c0 = series.A[0] * std::pow(series.eta[0], n1);
  for (std::size_t i = 0; i < series.t.size(); ++i)
    dev = std::max(dev, std::fabs(series.A[i] * std::pow(series.eta[i], n1) - c0));
  reps.push_back(make_report("twisted-A-eta-constant", dev, 0.0, 1e-8 - dev, 1e-15, 1e-15,
                             "sup |A eta^{n-1} - const|"));
  return reps;
}

// |margin| / max(1, rhs) against an equality tolerance, reported so that the
// margin is the equality slack itself
CheckReport equality_report(const CheckReport& raw, const std::string& name, double equality_tol) {
  const double rel = std::fabs(raw.margin) / std::max(1.0, raw.rhs);
  return make_report(name, rel, equality_tol, equality_tol - rel, 1e-15, equality_tol,
                     raw.context + "; lhs = " + std::to_string(raw.lhs) +
                         ", rhs = " + std::to_string(raw.rhs));
}

// relative margin must exceed a strictness threshold
CheckReport strict_report(const CheckReport& raw, const std::string& name, double threshold) {
  const double rel = raw.margin / std::max(1.0, raw.rhs);
  return make_report(name, rel, threshold, rel - threshold, 1e-15, 1e-15,
                     raw.context + "; strict margin/rhs = " + std::to_string(rel));
}

std::vector<CheckReport> crit_willmore() {
  std::vector<CheckReport> reps;
  const ProfileTriple schw = schwarzschild(3, 0.5);
  const ProfileTriple rn = reissner_nordstrom(3, 1.0, 0.5);
  const ProfileTriple custom = spline_roundtrip_model();

  const auto equality_case = [&](const ProfileTriple& t, double r, const std::string& label) {
    const auto avr = ineq::closed_form_avr(t);
    const CheckReport raw =
        ineq::willmore_check(t, surfaces::RadialGraphSurface::sphere(r, 96), avr, 1e-9, 1e-8);
    return equality_report(raw, "willmore-equality-" + label, 1e-8);
  };
  reps.push_back(equality_case(schw, 2.0, "schwarzschild"));
  reps.push_back(equality_case(rn, 3.0, "reissner-nordstrom"));
  reps.push_back(equality_case(custom, 3.0, "custom-roundtrip"));

  const auto pert = surfaces::RadialGraphSurface::cosine({3.0, 0.3}, 96);
  reps.push_back(strict_report(
      ineq::willmore_check(schw, pert, ineq::closed_form_avr(schw), 1e-9, 1e-12),
      "willmore-strict-perturbed", 1e-6));
  return reps;
}

std::vector<CheckReport> crit_isoperimetric() {
  std::vector<CheckReport> reps;
  const ProfileTriple schw = schwarzschild(3, 0.5);
  const ProfileTriple rn = reissner_nordstrom(3, 1.0, 0.5);

  const auto equality_case = [&](const ProfileTriple& t, double r, const std::string& label) {
    const CheckReport raw = ineq::isoperimetric_check(
        t, surfaces::RadialGraphSurface::sphere(r, 96), ineq::closed_form_avr(t), 1e-9, 1e-8);
    return equality_report(raw, "isoperimetric-equality-" + label, 1e-8);
  };
  reps.push_back(equality_case(schw, 2.0, "schwarzschild-r2"));
  reps.push_back(equality_case(rn, 3.0, "reissner-nordstrom-r3"));
  reps.push_back(equality_case(rn, 5.0, "reissner-nordstrom-r5"));

  // 50 random cosine surfaces with H > 0 in Reissner-Nordstrom
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> base_r(2.2, 6.0);
  std::uniform_real_distribution<double> rel(-0.04, 0.04);
  const auto avr_rn = ineq::closed_form_avr(rn);
  double min_rel_margin = std::numeric_limits<double>::infinity();
  int accepted = 0;
  while (accepted < 50) {
    const double c0 = base_r(rng);
    std::vector<double> coeffs{c0};
    for (int j = 1; j <= 4; ++j) coeffs.push_back(c0 * rel(rng));
    const auto surf = surfaces::RadialGraphSurface::cosine(coeffs, 96);
    if (surf.min_radius() <= 1.05 * rn.r_min) continue;
    bool mean_convex = true;
    for (int i = 1; i < 64 && mean_convex; ++i)
      mean_convex = surfaces::mean_curvature(rn, surf, M_PI * i / 64.0) > 0;
    if (!mean_convex) continue;
    ++accepted;
    const CheckReport rep = ineq::isoperimetric_check(rn, surf, avr_rn, 1e-9, 1e-12);
    min_rel_margin = std::min(min_rel_margin, rep.margin / std::max(1.0, rep.rhs));
  }
  reps.push_back(make_report("isoperimetric-random-surfaces", min_rel_margin, 0.0,
                             min_rel_margin + 1e-9, 1e-15, 1e-15,
                             "min margin/rhs over 50 random cosine surfaces"));

  // profile constancy
  const auto v_grid = log_grid(0.5, 200.0, 24);
  const auto profile_case = [&](const ProfileTriple& t, const char* label) {
    CheckReport rep = ineq::isoperimetric_profile_check(t, v_grid, ineq::closed_form_avr(t), 1e-8);
    rep.name = std::string("isoperimetric-profile-") + label;
    return rep;
  };
  reps.push_back(profile_case(schw, "schwarzschild"));
  reps.push_back(profile_case(rn, "reissner-nordstrom"));
  reps.push_back(profile_case(catalog::flat(3), "euclidean"));
  return reps;
}

std::vector<CheckReport> crit_heintze_karcher() {
  std::vector<CheckReport> reps;
  const auto equality_case = [&](const ProfileTriple& t, double r, const std::string& label) {
    const CheckReport raw =
        ineq::heintze_karcher_check(t, surfaces::RadialGraphSurface::sphere(r, 96), 1e-9, 1e-8);
    return equality_report(raw, "heintze-karcher-equality-" + label, 1e-8);
  };
  reps.push_back(equality_case(catalog::flat(3), 1.0, "euclidean"));
  reps.push_back(equality_case(catalog::desitter_cap(3), 0.6, "desitter-cap"));
  reps.push_back(equality_case(catalog::rescaled_cap(3, 0.8), 0.4, "rescaled-cap"));

  // horizon models saturate only up to the boundary term r_min |dM| / n
  const ProfileTriple schw = schwarzschild(3, 0.5);
  const CheckReport hk =
      ineq::heintze_karcher_check(schw, surfaces::RadialGraphSurface::sphere(2.0, 96), 1e-9, 1e-12);
  const double slack = schw.r_min * ineq::boundary_area(schw) / schw.n;
  const double dev = std::fabs(hk.margin - slack) / std::max(1.0, hk.rhs);
  reps.push_back(make_report("heintze-karcher-horizon-slack", hk.margin, slack, 1e-8 - dev, 1e-15,
                             1e-15, "margin vs closed-form boundary term r_min |dM| / n"));

  const auto strict_case = [&](const ProfileTriple& t, std::vector<double> coeffs,
                               const std::string& label) {
    return strict_report(
        ineq::heintze_karcher_check(t, surfaces::RadialGraphSurface::cosine(std::move(coeffs), 96),
                                    1e-9, 1e-12),
        "heintze-karcher-strict-" + label, 1e-6);
  };
  reps.push_back(strict_case(catalog::flat(3), {1.0, 0.1}, "euclidean-perturbed"));
  reps.push_back(strict_case(schw, {3.0, 0.3}, "schwarzschild-perturbed"));
  return reps;
}

std::vector<CheckReport> crit_laplacian() {
  std::vector<CheckReport> reps;

  // equality of the Riccati transport with (n-1)/eta on models
  const auto riccati_case = [&](const ProfileTriple& t, double r0, double r_end,
                                const std::string& label) {
    const double h0 = t.sphere_mean_curvature(r0) / t.f->value(r0);
    const auto res = conformal::riccati_evolve(t, r0, r_end, h0, 1e-3);
    double dev = 0.0;
    for (const auto& s : res.states)
      dev = std::max(dev, std::fabs(s.h_over_f * s.eta - (t.n - 1)));
    return make_report("riccati-equality-" + label, dev, 0.0, 1e-8 - dev, 1e-15, 1e-15,
                       "sup |h eta - (n-1)| along the radial flow");
  };
  reps.push_back(riccati_case(schwarzschild(3, 0.5), 2.0, 20.0, "schwarzschild"));
  reps.push_back(riccati_case(reissner_nordstrom(3, 1.0, 0.5), 3.0, 25.0, "reissner-nordstrom"));
  reps.push_back(riccati_case(catalog::desitter_cap(3), 0.2, 0.95, "desitter-cap"));

  // 20 randomized substatic warp-bend triples: substatic acceptance then
  // Laplacian comparison with slack >= -1e-10
  std::mt19937 rng(413001u);
  std::uniform_real_distribution<double> amp(0.05, 0.45), steep(1.0, 4.0), center(2.0, 6.0);
  double worst_margin = std::numeric_limits<double>::infinity();
  int accepted = 0;
  for (int trial = 0; accepted < 20 && trial < 200; ++trial) {
    const int n = 3 + (trial % 2);
    const ProfileTriple t = catalog::concave_warp(n, amp(rng), steep(rng), center(rng));
    const auto grid = log_grid(0.5, 30.0, 80);
    const CheckReport sub = curvature::check_substatic(t, grid, 1e-9);
    if (!sub.passed) continue;
    ++accepted;
    const CheckReport lap = conformal::laplacian_comparison_check(t, 1.0, grid, 1e-10);
    worst_margin = std::min(worst_margin, lap.margin);
  }
  reps.push_back(make_report("laplacian-randomized-warps", worst_margin, 0.0,
                             worst_margin + 1e-10, 1e-15, 1e-15,
                             "min margin of (n-1)/eta - H/f over 20 substatic warp bends"));

  // Riccati blow-up for negative initial data
  const ProfileTriple schw = schwarzschild(3, 0.5);
  bool all_blow = true;
  std::ostringstream ctx;
  for (double h0 : {-0.1, -1.0, -5.0}) {
    const double r_end = 2.0 + 3.0 * 2.0 / std::fabs(h0) + 5.0;
    const auto res = conformal::riccati_evolve(schw, 2.0, std::min(r_end, 60.0), h0, 1e-3);
    const bool blew = res.event == conformal::RiccatiEvent::blow_up;
    all_blow = all_blow && blew;
    ctx << "h0=" << h0 << (blew ? " blow-up at rho=" : " NO blow-up, rho=")
        << (blew ? res.rho_event : res.states.back().rho) << "; ";
  }
  reps.push_back(make_report("riccati-negative-blowup", all_blow ? 1.0 : -1.0, 0.0,
                             all_blow ? 1.0 : -1.0, 0.5, 1e-15, ctx.str()));
  return reps;
}

std::vector<CheckReport> crit_appendix() {
  std::vector<CheckReport> reps;
  struct Case {
    ProfileTriple t;
    std::vector<double> radii;
    const char* label;
  };
  std::vector<Case> cases;
  {
    const ProfileTriple schw = schwarzschild(3, 1.0);
    cases.push_back({schw, log_grid(1.1 * schw.r_min, 25.0 * schw.r_min, 20), "schwarzschild"});
    const ProfileTriple rn = reissner_nordstrom(3, 1.0, 0.5);
    cases.push_back({rn, log_grid(1.1 * rn.r_min, 25.0 * rn.r_min, 20), "reissner-nordstrom"});
    std::vector<double> ds_radii;
    for (int i = 0; i < 20; ++i) ds_radii.push_back(0.1 + 0.8 * i / 19.0);
    cases.push_back({catalog::desitter_cap(3), ds_radii, "desitter-cap"});
  }

  double worst_closed = 0.0, worst_fd = 0.0, worst_lixia = 0.0;
  for (const auto& c : cases) {
    for (double r : c.radii) {
      const CheckReport closed =
          curvature::cd01_identity_check(c.t, r, curvature::CurvaturePath::closed_form, 1e-10);
      worst_closed = std::max(worst_closed, closed.lhs);
      if (curvature::fd_oracle_applicable(c.t, r)) {
        const CheckReport fd = curvature::cd01_identity_check(
            c.t, r, curvature::CurvaturePath::finite_difference, 1e-6);
        worst_fd = std::max(worst_fd, fd.lhs);
      }
      const FrameTensor2 lix = curvature::lixia_ricci(c.t, r, 0.0, 1.0);
      const FrameTensor2 q = curvature::substatic_tensor(c.t, r);
      const double f = c.t.f->value(r);
      worst_lixia = std::max({worst_lixia, std::fabs(lix.rad_rad * f - q.rad_rad),
                              std::fabs(lix.tan_tan * f - q.tan_tan)});
    }
  }
  reps.push_back(make_report("cd01-closed-form", worst_closed, 0.0, 1e-10 - worst_closed, 1e-15,
                             1e-15, "max componentwise difference at 60 radii"));
  reps.push_back(make_report("cd01-fd-path", worst_fd, 0.0, 1e-6 - worst_fd, 1e-15, 1e-15,
                             "max componentwise difference on the fd path"));
  reps.push_back(make_report("lixia-01-matches-substatic", worst_lixia, 0.0,
                             1e-10 - worst_lixia, 1e-15, 1e-15,
                             "max |f Ric^{u01} - Q| componentwise"));

  const ProfileTriple rn = reissner_nordstrom(3, 1.0, 0.5);
  CheckReport nec = curvature::nec_check(rn, 0.0, 1000);
  nec.name = "nec-reissner-nordstrom";
  reps.push_back(nec);

  // sign-indefinite synthetic profile: convex warp bend violates both
  const ProfileTriple bad = catalog::convex_warp(3, 0.5, 2.0, 3.0);
  const auto grid = log_grid(0.5, 20.0, 64);
  const CheckReport sub = curvature::check_substatic(bad, grid, 1e-9);
  const CheckReport nec_bad = curvature::nec_check(bad, 0.0, 400, grid);
  const bool both_negative = !sub.passed && !nec_bad.passed;
  std::ostringstream ctx;
  ctx << "min Q eigenvalue = " << sub.lhs << ", min sampled T(X,X) = " << nec_bad.lhs;
  reps.push_back(make_report("nec-sign-equivalence", both_negative ? 1.0 : -1.0, 0.0,
                             both_negative ? 1.0 : -1.0, 0.5, 1e-15, ctx.str()));
  return reps;
}

std::vector<CheckReport> crit_ends() {
  std::vector<CheckReport> reps;
  const auto classify_case = [&](const ProfileTriple& t, models::EndKind want,
                                 const std::string& label) {
    const models::EndClass end = models::classify_end(t);
    const bool ok = end.kind == want;
    return make_report("end-" + label, ok ? 1.0 : -1.0, 0.0, ok ? 1.0 : -1.0, 0.5, 1e-15,
                       std::string(models::end_kind_name(end.kind)) + "; " + end.evidence);
  };
  reps.push_back(classify_case(schwarzschild(3, 1.0), models::EndKind::f_complete,
                               "schwarzschild-f-complete"));
  reps.push_back(classify_case(reissner_nordstrom(3, 1.0, 0.5), models::EndKind::f_complete,
                               "reissner-nordstrom-f-complete"));
  reps.push_back(classify_case(schwarzschild_ads(3, 1.0, -3.0),
                               models::EndKind::conformally_compact, "ads-conformally-compact"));

  const CheckReport uni = models::check_uniformity_criteria(schwarzschild(3, 1.0));
  const bool via_f_to_one = uni.passed && uni.context.find("f -> 1") != std::string::npos;
  reps.push_back(make_report("uniformity-schwarzschild", via_f_to_one ? 1.0 : -1.0, 0.0,
                             via_f_to_one ? 1.0 : -1.0, 0.5, 1e-15, uni.context));

  CheckReport pinch = models::check_f_pinching(schwarzschild(3, 1.0), 0.5, 2.5, 100.0);
  pinch.name = "f-pinching-schwarzschild";
  reps.push_back(pinch);
  return reps;
}

std::vector<CheckReport> crit_hygiene() {
  std::vector<CheckReport> reps;

  // geodesic energy conservation per unit arclength
  double worst_drift = 0.0;
  {
    const ProfileTriple flat = catalog::flat(3);
    const auto s0 = conformal::initial_geodesic_state(flat, 2.0, 0.0, 1.1);
    const auto traj = conformal::geodesic_integrate(flat, s0, 5.0, 1e-3);
    worst_drift = std::max(worst_drift, traj.hamiltonian_drift / 5.0);

    const ProfileTriple schw = schwarzschild(3, 0.5);
    const auto s1 = conformal::initial_geodesic_state(schw, 6.0, 0.0, 1.2);
    const auto traj1 = conformal::geodesic_integrate(schw, s1, 5.0, 1e-3);
    worst_drift = std::max(worst_drift, traj1.hamiltonian_drift / 5.0);
  }
  reps.push_back(make_report("geodesic-energy-drift", worst_drift, 0.0, 1e-9 - worst_drift,
                             1e-15, 1e-15, "max relative Hamiltonian drift per unit length"));

  // quadrature self-convergence under node doubling
  double worst_delta = 0.0;
  {
    const ProfileTriple schw = schwarzschild(3, 0.5);
    const ProfileTriple rn = reissner_nordstrom(3, 1.0, 0.5);
    const ProfileTriple flat = catalog::flat(3);
    const std::vector<std::pair<const ProfileTriple*, std::vector<double>>> cat = {
        {&schw, {2.0}}, {&rn, {3.0, 0.12}}, {&flat, {1.0, 0.1}}};
    for (const auto& [t, coeffs] : cat) {
      const auto s64 = surfaces::RadialGraphSurface::cosine(coeffs, 64);
      const auto s128 = surfaces::RadialGraphSurface::cosine(coeffs, 128);
      const double a64 = surfaces::area(*t, s64), a128 = surfaces::area(*t, s128);
      const double v64 = surfaces::f_volume(*t, s64), v128 = surfaces::f_volume(*t, s128);
      worst_delta = std::max(worst_delta, std::fabs(a128 - a64) / std::max(1.0, std::fabs(a128)));
      worst_delta = std::max(worst_delta, std::fabs(v128 - v64) / std::max(1.0, std::fabs(v128)));
    }
  }
  reps.push_back(make_report("quadrature-self-convergence", worst_delta, 0.0,
                             1e-9 - worst_delta, 1e-15, 1e-15,
                             "node-doubling delta for area and f-volume"));
  return reps;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> kCriteria = {
      {"substatic-reissner-nordstrom",
       "substatic verification with radial equality and dual-path agreement", crit_substatic_rn},
      {"vacuum-schwarzschild", "sup |Q| < 1e-8 (equality case)", crit_vacuum_schwarzschild},
      {"bishop-gromov-rigidity", "A == 1, monotonicity, V(k=n) == A, V >= (n/k) A",
       crit_bishop_gromov},
      {"avr", "Schwarzschild AVR = 1, base independence, twisted product AVR -> 0", crit_avr},
      {"willmore", "equality on model spheres, strict on perturbed spheres", crit_willmore},
      {"isoperimetric", "equality on model spheres, random surface sweep, profile constancy",
       crit_isoperimetric},
      {"heintze-karcher", "equality on capped model spheres, horizon slack, strict cases",
       crit_heintze_karcher},
      {"laplacian-comparison", "Riccati equality on models, randomized warps, blow-up detection",
       crit_laplacian},
      {"appendix-identities", "CD(0,1) conformal identity, Li-Xia, NEC sampling", crit_appendix},
      {"ends", "end classification, uniformity, pinching", crit_ends},
      {"numerical-hygiene", "energy drift, quadrature self-convergence, runtime", crit_hygiene},
  };
  return kCriteria;
}

SuiteResult run_acceptance_suite(const std::vector<std::string>& only, std::ostream& progress) {
  SuiteResult out;
  const auto suite_t0 = std::chrono::steady_clock::now();
  for (const auto& crit : acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), crit.name) == only.end()) continue;
    CriterionResult res;
    res.name = crit.name;
    const auto t0 = std::chrono::steady_clock::now();
    res.reports = crit.run();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.passed = true;
    for (const auto& r : res.reports) res.passed = res.passed && r.passed;
    out.results.push_back(std::move(res));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_t0).count();

  // single-threaded wall-clock budget for the full suite
  if (only.empty()) {
    CheckReport runtime = make_report("suite-runtime", out.seconds, 120.0, 120.0 - out.seconds,
                                      1e-15, 1e-15, "seconds, single-threaded");
    if (!out.results.empty() && out.results.back().name == "numerical-hygiene") {
      out.results.back().reports.push_back(runtime);
      out.results.back().passed = out.results.back().passed && runtime.passed;
    }
  }

  out.all_passed = !out.results.empty();
  for (const auto& res : out.results) {
    out.all_passed = out.all_passed && res.passed;
    progress << (res.passed ? "PASS" : "FAIL") << "  " << res.name << "  ("
             << res.reports.size() << " checks, " << res.seconds << " s)\n";
    for (const auto& r : res.reports)
      if (!r.passed)
        progress << "      failed: " << r.name << "  margin = " << r.margin << "  (" << r.context
                 << ")\n";
  }
  return out;
}

json suite_result_to_json(const SuiteResult& result) {
  json arr = json::array();
  for (const auto& res : result.results) {
    arr.push_back(json{{"criterion", res.name},
                       {"passed", res.passed},
                       {"seconds", res.seconds},
                       {"checks", reports_to_json(res.reports)}});
  }
  return json{{"schema", 1},
              {"suite", "acceptance"},
              {"all_passed", result.all_passed},
              {"seconds", result.seconds},
              {"criteria", arr}};
}

}  // namespace substat::suite
