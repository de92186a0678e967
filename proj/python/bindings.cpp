#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "substat/catalog.hpp"
#include "substat/conformal.hpp"
#include "substat/curvature.hpp"
#include "substat/errors.hpp"
#include "substat/functionals.hpp"
#include "substat/inequalities.hpp"
#include "substat/models.hpp"
#include "substat/suite.hpp"
#include "substat/surfaces.hpp"

namespace py = pybind11;
using namespace substat;

namespace {

models::ModelSpec spec_from_kwargs(const std::string& family, int n, double lambda, double mass,
                                   double charge,
                                   const std::vector<std::array<double, 3>>& profile_table) {
  models::ModelSpec spec;
  spec.family = models::family_from_string(family);
  spec.n = n;
  spec.lambda = lambda;
  spec.mass = mass;
  spec.charge = charge;
  spec.cross_section = models::CrossSection::round_sphere(n - 1);
  spec.profile_table = profile_table;
  return spec;
}

py::dict report_to_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margin"] = r.margin;
  d["tol"] = r.tol;
  d["passed"] = r.passed;
  d["equality"] = r.equality;
  d["context"] = r.context;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "substatic comparison geometry: models, curvature tensors, Bishop-Gromov "
            "functionals and sharp inequality checks";

  py::register_exception<Error>(m, "SubstatError");

  py::class_<models::ProfileTriple>(m, "ProfileTriple")
      .def_readonly("n", &models::ProfileTriple::n)
      .def_readonly("r_min", &models::ProfileTriple::r_min)
      .def_readonly("r_max", &models::ProfileTriple::r_max)
      .def_readonly("has_horizon", &models::ProfileTriple::has_horizon)
      .def("f", [](const models::ProfileTriple& t, double r) { return t.eval_f(r); },
           "f, f', f'' at r")
      .def("b", [](const models::ProfileTriple& t, double r) { return t.eval_b(r); },
           "b, b', b'' at r")
      .def("sphere_mean_curvature", &models::ProfileTriple::sphere_mean_curvature)
      .def("__repr__", [](const models::ProfileTriple& t) {
        std::ostringstream os;
        os << "<ProfileTriple " << models::family_name(t.family) << " n=" << t.n
           << " r_min=" << t.r_min << ">";
        return os.str();
      });

  m.def("build_model", [](const std::string& family, int n, double lambda, double mass,
                          double charge, const std::vector<std::array<double, 3>>& profile_table) {
          return models::build_model(
              spec_from_kwargs(family, n, lambda, mass, charge, profile_table));
        },
        py::arg("family"), py::arg("n") = 3, py::arg("lambda") = 0.0, py::arg("mass") = 0.0,
        py::arg("charge") = 0.0,
        py::arg("profile_table") = std::vector<std::array<double, 3>>{},
        "build a model triple from the closed-form family or a custom (r, f, b) table");

  m.def("flat", &catalog::flat, py::arg("n") = 3);
  m.def("desitter_cap", &catalog::desitter_cap, py::arg("n") = 3);
  m.def("twisted_product", &catalog::twisted_product, py::arg("n") = 3);

  m.def("classify_end", [](const models::ProfileTriple& t) {
    const auto end = models::classify_end(t);
    py::dict d;
    d["kind"] = models::end_kind_name(end.kind);
    d["rho_total"] = end.rho_total;
    d["evidence"] = end.evidence;
    return d;
  });

  m.def("ricci", [](const models::ProfileTriple& t, double r) {
          const auto v = curvature::ricci(t, r);
          return std::make_pair(v.rad_rad, v.tan_tan);
        },
        "frame Ricci components (rad_rad, tan_tan)");
  m.def("fd_curvature_oracle", [](const models::ProfileTriple& t, double r) {
    const auto v = curvature::fd_curvature_oracle(t, r);
    return std::make_pair(v.rad_rad, v.tan_tan);
  });
  m.def("substatic_tensor", [](const models::ProfileTriple& t, double r) {
    const auto v = curvature::substatic_tensor(t, r);
    return std::make_pair(v.rad_rad, v.tan_tan);
  });
  m.def("check_substatic", [](const models::ProfileTriple& t, const std::vector<double>& grid) {
    return report_to_dict(curvature::check_substatic(t, grid));
  });
  m.def("nec_check", [](const models::ProfileTriple& t, double lambda, int samples) {
          return report_to_dict(curvature::nec_check(t, lambda, samples));
        },
        py::arg("triple"), py::arg("lambda") = 0.0, py::arg("samples") = 1000);

  m.def("rho_radial", &conformal::rho_radial, py::arg("triple"), py::arg("r0"), py::arg("r"),
        py::arg("rel_tol") = 1e-11);
  m.def("eta_from_sphere", &conformal::eta_from_sphere);
  m.def("riccati_evolve", [](const models::ProfileTriple& t, double r0, double r_end, double h0) {
    const auto res = conformal::riccati_evolve(t, r0, r_end, h0);
    py::list states;
    for (const auto& s : res.states) states.append(py::make_tuple(s.rho, s.h_over_f, s.eta));
    py::dict d;
    d["states"] = states;
    d["event"] = res.event == conformal::RiccatiEvent::blow_up ? "blow-up"
                 : res.event == conformal::RiccatiEvent::stays_nonpositive ? "stays-nonpositive"
                                                                           : "none";
    d["rho_event"] = res.rho_event;
    return d;
  });

  m.def("area_series", [](const models::ProfileTriple& t, double r0,
                          const std::vector<double>& t_grid) {
          const auto s = functionals::area_functional(t, functionals::Base::sphere(r0), t_grid);
          py::dict d;
          d["t"] = s.t;
          d["A"] = s.A;
          d["monotone"] = s.monotone_A;
          return d;
        },
        "Bishop-Gromov area ratio A(t) from a coordinate-sphere base");
  m.def("volume_series", [](const models::ProfileTriple& t, double r0,
                            const std::vector<double>& t_grid, double k) {
    const auto s = functionals::volume_functional(t, functionals::Base::sphere(r0), t_grid, k);
    py::dict d;
    d["t"] = s.t;
    d["A"] = s.A;
    d["V"] = s.V;
    d["monotone_A"] = s.monotone_A;
    d["monotone_V"] = s.monotone_V;
    return d;
  });
  m.def("avr_estimate", [](const models::ProfileTriple& t, double r0) {
    const auto est = functionals::avr_estimate(t, functionals::Base::sphere(r0));
    py::dict d;
    d["value"] = est.value;
    d["error_bar"] = est.error_bar;
    d["certified"] = est.certified;
    d["via_volume"] = est.via_volume;
    return d;
  });

  py::class_<surfaces::RadialGraphSurface>(m, "RadialGraphSurface")
      .def_static("sphere", &surfaces::RadialGraphSurface::sphere, py::arg("r"),
                  py::arg("nodes") = 64)
      .def_static("cosine", &surfaces::RadialGraphSurface::cosine, py::arg("coeffs"),
                  py::arg("nodes") = 64)
      .def("min_radius", &surfaces::RadialGraphSurface::min_radius)
      .def("max_radius", &surfaces::RadialGraphSurface::max_radius);

  m.def("area", &surfaces::area);
  m.def("f_volume", &surfaces::f_volume);
  m.def("mean_curvature", &surfaces::mean_curvature);

  m.def("willmore_check", [](const models::ProfileTriple& t,
                             const surfaces::RadialGraphSurface& s) {
    return report_to_dict(ineq::willmore_check(t, s, ineq::closed_form_avr(t)));
  });
  m.def("isoperimetric_check", [](const models::ProfileTriple& t,
                                  const surfaces::RadialGraphSurface& s) {
    return report_to_dict(ineq::isoperimetric_check(t, s, ineq::closed_form_avr(t)));
  });
  m.def("heintze_karcher_check", [](const models::ProfileTriple& t,
                                    const surfaces::RadialGraphSurface& s) {
    return report_to_dict(ineq::heintze_karcher_check(t, s));
  });

  m.def("acceptance_criteria", [] {
    py::list names;
    for (const auto& c : suite::acceptance_criteria()) names.append(c.name);
    return names;
  });
  m.def("run_suite", [](const std::vector<std::string>& only) {
          std::ostringstream progress;
          const auto result = suite::run_acceptance_suite(only, progress);
          py::dict d;
          d["all_passed"] = result.all_passed;
          d["seconds"] = result.seconds;
          d["log"] = progress.str();
          d["json"] = suite::suite_result_to_json(result).dump(2);
          return d;
        },
        py::arg("only") = std::vector<std::string>{},
        "run the acceptance suite (optionally a named subset)");
}
