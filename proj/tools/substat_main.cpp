#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "substat/catalog.hpp"
#include "substat/conformal.hpp"
#include "substat/curvature.hpp"
#include "substat/errors.hpp"
#include "substat/functionals.hpp"
#include "substat/inequalities.hpp"
#include "substat/models.hpp"
#include "substat/suite.hpp"
#include "substat/surfaces.hpp"

namespace {

using namespace substat;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

struct ModelFlags {
  std::string family = "schwarzschild";
  int n = 3;
  double lambda = 0.0;
  double mass = 0.0;
  double charge = 0.0;
  std::string config_path;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file (flags override its model)");
    app->add_option("--family", family,
                    "space-form|schwarzschild|reissner-nordstrom|schwarzschild-de-sitter|"
                    "schwarzschild-ads|custom");
    app->add_option("--n", n, "dimension (>= 3)");
    app->add_option("--lambda", lambda, "cosmological constant");
    app->add_option("--mass,--m,-m", mass, "mass parameter");
    app->add_option("--charge,--q,-q", charge, "charge parameter");
  }

  models::ProfileTriple build(const CLI::App* app) const {
    models::ModelSpec spec;
    bool have_config_model = false;
    if (!config_path.empty()) {
      const suite::SuiteConfig cfg = suite::load_config_file(config_path);
      if (cfg.model) {
        spec = *cfg.model;
        have_config_model = true;
      }
    }
    if (!have_config_model || app->count("--family")) {
      spec.family = models::family_from_string(family);
    }
    if (!have_config_model || app->count("--n")) spec.n = n;
    if (!have_config_model || app->count("--lambda")) spec.lambda = lambda;
    if (!have_config_model || app->count("--mass")) spec.mass = mass;
    if (!have_config_model || app->count("--charge")) spec.charge = charge;
    if (!have_config_model) spec.cross_section = models::CrossSection::round_sphere(spec.n - 1);
    return models::build_model(spec);
  }
};

surfaces::RadialGraphSurface surface_from_flags(const CLI::App* app, const ModelFlags& mf,
                                                double sphere_r, const std::vector<double>& coeffs,
                                                int nodes) {
  if (!coeffs.empty()) return surfaces::RadialGraphSurface::cosine(coeffs, nodes);
  // config-file surface spec unless the radius flag was given explicitly
  if (!app->count("--surface-r") && !mf.config_path.empty()) {
    const suite::SuiteConfig cfg = suite::load_config_file(mf.config_path);
    if (cfg.surface) return *cfg.surface;
  }
  return surfaces::RadialGraphSurface::sphere(sphere_r, nodes);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::IoError, "cannot write " + path);
  os << text;
}

int report_exit(const std::vector<CheckReport>& reps, const std::string& out_path) {
  bool all = true;
  for (const auto& r : reps) {
    all = all && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  margin = " << r.margin
              << (r.equality ? "  [equality]" : "") << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot write " + out_path);
    os << reports_to_json(reps).dump(2) << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suite for substatic comparison geometry"};
  app.require_subcommand(1);

  // model ------------------------------------------------------------------
  auto* cmd_model = app.add_subcommand("model", "build a model triple and print its summary");
  ModelFlags mf_model;
  mf_model.attach(cmd_model);

  // check ------------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "run a named pointwise check");
  ModelFlags mf_check;
  mf_check.attach(cmd_check);
  std::string check_name = "substatic";
  double check_tol = 1e-9;
  double check_alpha = 0.0, check_gamma = 1.0;
  double surface_r = 2.0;
  std::vector<double> surface_coeffs;
  cmd_check->add_option("name", check_name,
                        "substatic|nec|cd01|lixia|laplacian|heintze-karcher|lagrange|"
                        "boundary-minimizing");
  cmd_check->add_option("--tol", check_tol, "tolerance override (> 0)");
  cmd_check->add_option("--alpha", check_alpha, "Li-Xia alpha");
  cmd_check->add_option("--gamma", check_gamma, "Li-Xia gamma");
  cmd_check->add_option("--surface-r", surface_r, "coordinate sphere radius");
  cmd_check->add_option("--surface-coeffs", surface_coeffs, "cosine coefficients c0 c1 ...");

  // compare ----------------------------------------------------------------
  auto* cmd_compare = app.add_subcommand("compare", "Bishop-Gromov series A(t), V(t)");
  ModelFlags mf_compare;
  mf_compare.attach(cmd_compare);
  double cmp_r0 = 2.0, cmp_tmax = 100.0, cmp_k = 0.0;
  int cmp_points = 50;
  std::string cmp_format = "csv", cmp_out;
  bool cmp_point_base = false;
  cmd_compare->add_option("--r0", cmp_r0, "base coordinate sphere radius");
  cmd_compare->add_flag("--point-base", cmp_point_base, "use the center point base (capped models)");
  cmd_compare->add_option("--t-max", cmp_tmax, "largest optical distance");
  cmd_compare->add_option("--points", cmp_points, "grid size");
  cmd_compare->add_option("--k", cmp_k, "volume exponent (0: default k = n)");
  cmd_compare->add_option("--format", cmp_format, "csv|json");
  cmd_compare->add_option("--output,-o", cmp_out, "output path (default stdout)");

  // willmore / isoperimetric -------------------------------------------------
  auto* cmd_willmore = app.add_subcommand("willmore", "Willmore inequality on a surface");
  ModelFlags mf_willmore;
  mf_willmore.attach(cmd_willmore);
  double wil_r = 2.0;
  std::vector<double> wil_coeffs;
  std::string wil_out;
  cmd_willmore->add_option("--surface-r", wil_r, "coordinate sphere radius");
  cmd_willmore->add_option("--surface-coeffs", wil_coeffs, "cosine coefficients c0 c1 ...");
  cmd_willmore->add_option("--output,-o", wil_out, "JSON report path");

  auto* cmd_iso = app.add_subcommand("isoperimetric", "weighted isoperimetric inequality");
  ModelFlags mf_iso;
  mf_iso.attach(cmd_iso);
  double iso_r = 2.0;
  std::vector<double> iso_coeffs;
  std::string iso_out;
  cmd_iso->add_option("--surface-r", iso_r, "coordinate sphere radius");
  cmd_iso->add_option("--surface-coeffs", iso_coeffs, "cosine coefficients c0 c1 ...");
  cmd_iso->add_option("--output,-o", iso_out, "JSON report path");

  // ends ---------------------------------------------------------------------
  auto* cmd_ends = app.add_subcommand("ends", "end classification and asymptotic criteria");
  ModelFlags mf_ends;
  mf_ends.attach(cmd_ends);
  double ends_k = 0.5;
  cmd_ends->add_option("--k", ends_k, "pinching exponent in (0,1)");

  // geodesic -------------------------------------------------------------
  auto* cmd_geo = app.add_subcommand("geodesic", "integrate an optical geodesic, dump CSV");
  ModelFlags mf_geo;
  mf_geo.attach(cmd_geo);
  double geo_r0 = 2.0, geo_alpha = 0.0, geo_len = 5.0, geo_step = 1e-3;
  std::string geo_out;
  cmd_geo->add_option("--r0", geo_r0, "start radius");
  cmd_geo->add_option("--alpha", geo_alpha, "launch angle from outward radial");
  cmd_geo->add_option("--length", geo_len, "optical arclength");
  cmd_geo->add_option("--step", geo_step, "RK4 step");
  cmd_geo->add_option("--output,-o", geo_out, "CSV path (default stdout)");

  // suite ----------------------------------------------------------------
  auto* cmd_suite = app.add_subcommand("suite", "run the acceptance criteria suite");
  std::string suite_config, suite_out;
  std::vector<std::string> suite_only;
  cmd_suite->add_option("--config", suite_config, "JSON config (checks subset, output)");
  cmd_suite->add_option("--only", suite_only, "run only the named criteria");
  cmd_suite->add_option("--output,-o", suite_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (cmd_model->parsed()) {
      const models::ProfileTriple t = mf_model.build(cmd_model);
      const models::EndClass end = models::classify_end(t);
      json j{{"family", models::family_name(t.family)},
             {"n", t.n},
             {"r_min", t.r_min},
             {"r_max", std::isfinite(t.r_max) ? json(t.r_max) : json("inf")},
             {"has_horizon", t.has_horizon},
             {"boundary_area", ineq::boundary_area(t)},
             {"end", models::end_kind_name(end.kind)},
             {"end_evidence", end.evidence}};
      std::cout << j.dump(2) << '\n';
      return kExitOk;
    }

    if (cmd_check->parsed()) {
      if (!(check_tol > 0)) fail(ErrorCode::ConfigError, "tolerance override must be positive");
      const models::ProfileTriple t = mf_check.build(cmd_check);
      std::vector<CheckReport> reps;
      const double lo = t.has_horizon ? 1.05 * t.r_min : t.r_min + 0.05;
      const double hi = std::isfinite(t.r_max) ? 0.95 * t.r_max : 50.0 * std::max(1.0, lo);
      std::vector<double> grid;
      for (int i = 0; i < 100; ++i) grid.push_back(lo * std::pow(hi / lo, i / 99.0));

      if (check_name == "substatic") {
        reps.push_back(curvature::check_substatic(t, grid, check_tol));
      } else if (check_name == "nec") {
        reps.push_back(curvature::nec_check(t, t.lambda, 1000, grid, check_tol));
      } else if (check_name == "cd01") {
        double worst = 0.0;
        for (double r : grid) worst = std::max(
            worst, curvature::cd01_identity_check(t, r, curvature::CurvaturePath::closed_form).lhs);
        reps.push_back(make_report("cd01-identity", worst, 0.0, check_tol - worst, 1e-15, 1e-15,
                                   "max componentwise difference over the grid"));
      } else if (check_name == "lixia") {
        double worst = 0.0;
        for (double r : grid) {
          const auto lix = curvature::lixia_ricci(t, r, check_alpha, check_gamma);
          const auto q = curvature::substatic_tensor(t, r);
          const double f = t.f->value(r);
          if (check_alpha == 0.0 && check_gamma == 1.0)
            worst = std::max({worst, std::fabs(lix.rad_rad * f - q.rad_rad),
                              std::fabs(lix.tan_tan * f - q.tan_tan)});
        }
        reps.push_back(make_report("lixia", worst, 0.0, check_tol - worst, 1e-15, 1e-15,
                                   "max |f Ric^{u alpha gamma} - Q| (alpha=0, gamma=1)"));
      } else if (check_name == "laplacian") {
        reps.push_back(conformal::laplacian_comparison_check(t, lo * 1.2, grid, check_tol));
      } else if (check_name == "heintze-karcher") {
        reps.push_back(ineq::heintze_karcher_check(
            t, surface_from_flags(cmd_check, mf_check, surface_r, surface_coeffs, 96), check_tol));
      } else if (check_name == "lagrange") {
        reps.push_back(ineq::lagrange_multiplier_check(
            t, surface_from_flags(cmd_check, mf_check, surface_r, surface_coeffs, 96), check_tol));
      } else if (check_name == "boundary-minimizing") {
        std::vector<surfaces::RadialGraphSurface> surfs{
            surface_from_flags(cmd_check, mf_check, surface_r, surface_coeffs, 96)};
        reps.push_back(ineq::boundary_minimizing_check(t, surfs, check_tol));
      } else {
        fail(ErrorCode::ConfigError, "unknown check name '" + check_name + "'");
      }
      return report_exit(reps, "");
    }

    if (cmd_compare->parsed()) {
      const models::ProfileTriple t = mf_compare.build(cmd_compare);
      const auto base = cmp_point_base ? functionals::Base::point()
                                       : functionals::Base::sphere(cmp_r0);
      std::vector<double> grid;
      for (int i = 0; i < cmp_points; ++i)
        grid.push_back(cmp_tmax * std::pow(1e-2, 1.0 - double(i) / (cmp_points - 1)));
      const double k = cmp_k > 0 ? cmp_k : double(t.n);
      const auto series = functionals::volume_functional(t, base, grid, k);
      if (cmp_format == "csv") {
        std::ostringstream os;
        suite::emit_series_csv(series, os);
        write_text(cmp_out, os.str());
      } else if (cmp_format == "json") {
        write_text(cmp_out, suite::series_to_json(series).dump(2) + "\n");
      } else {
        fail(ErrorCode::ConfigError, "format must be csv or json");
      }
      return series.monotone_A && series.monotone_V ? kExitOk : kExitCheckFailed;
    }

    if (cmd_willmore->parsed()) {
      const models::ProfileTriple t = mf_willmore.build(cmd_willmore);
      const auto avr = ineq::closed_form_avr(t);
      const auto rep = ineq::willmore_check(
          t, surface_from_flags(cmd_willmore, mf_willmore, wil_r, wil_coeffs, 96), avr);
      return report_exit({rep}, wil_out);
    }

    if (cmd_iso->parsed()) {
      const models::ProfileTriple t = mf_iso.build(cmd_iso);
      const auto avr = ineq::closed_form_avr(t);
      const auto rep = ineq::isoperimetric_check(
          t, surface_from_flags(cmd_iso, mf_iso, iso_r, iso_coeffs, 96), avr);
      return report_exit({rep}, iso_out);
    }

    if (cmd_ends->parsed()) {
      const models::ProfileTriple t = mf_ends.build(cmd_ends);
      const models::EndClass end = models::classify_end(t);
      std::cout << "end: " << models::end_kind_name(end.kind) << "\n  " << end.evidence << "\n";
      std::vector<CheckReport> reps;
      if (end.kind == models::EndKind::f_complete) {
        reps.push_back(models::check_uniformity_criteria(t));
        const double lo = t.has_horizon ? 2.0 * t.r_min : std::max(1.0, t.r_min + 1.0);
        reps.push_back(models::check_f_pinching(t, ends_k, lo, 50.0 * lo));
      }
      return report_exit(reps, "");
    }

    if (cmd_geo->parsed()) {
      const models::ProfileTriple t = mf_geo.build(cmd_geo);
      const auto s0 = conformal::initial_geodesic_state(t, geo_r0, 0.0, geo_alpha);
      const auto traj = conformal::geodesic_integrate(t, s0, geo_len, geo_step);
      std::ostringstream os;
      os << "rho,r,phi,eta,h_over_f\n";
      const bool radial = std::fabs(std::sin(geo_alpha)) < 1e-14;
      char buf[40];
      for (const auto& s : traj.states) {
        const auto fmt = [&buf](double v) {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          return std::string(buf);
        };
        // h = H/f of the coordinate sphere through the point; meaningful for
        // radial flows (matches the Riccati transport on models)
        const double h = radial
                             ? t.sphere_mean_curvature(s.r) / t.f->value(s.r)
                             : std::nan("");
        os << fmt(s.rho) << ',' << fmt(s.r) << ',' << fmt(s.phi) << ',' << fmt(s.eta) << ','
           << fmt(h) << '\n';
      }
      write_text(geo_out, os.str());
      return kExitOk;
    }

    if (cmd_suite->parsed()) {
      std::vector<std::string> only = suite_only;
      suite::OutputSpec out;
      out.path = suite_out;
      if (!suite_config.empty()) {
        const suite::SuiteConfig cfg = suite::load_config_file(suite_config);
        if (only.empty()) only = cfg.checks;
        if (out.path.empty()) out = cfg.output;
      }
      const suite::SuiteResult result = suite::run_acceptance_suite(only, std::cout);
      const json doc = suite::suite_result_to_json(result);
      if (!out.path.empty()) suite::write_output(doc, out);
      return result.all_passed ? kExitOk : kExitCheckFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
