#include <cmath>
#include <vector>

#include "doctest.h"
#include "substat/catalog.hpp"
#include "substat/curvature.hpp"
#include "substat/errors.hpp"
#include "substat/models.hpp"

using namespace substat;
using curvature::FrameTensor2;

namespace {

models::ProfileTriple schwarzschild(double m) {
  models::ModelSpec s;
  s.family = models::Family::schwarzschild;
  s.n = 3;
  s.mass = m;
  s.cross_section = models::CrossSection::round_sphere(2);
  return models::build_model(s);
}

models::ProfileTriple reissner(double m, double q) {
  models::ModelSpec s;
  s.family = models::Family::reissner_nordstrom;
  s.n = 3;
  s.mass = m;
  s.charge = q;
  s.cross_section = models::CrossSection::round_sphere(2);
  return models::build_model(s);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

}  // namespace

TEST_CASE("flat space has vanishing curvature on both paths") {
  const auto flat = catalog::flat(3);
  const FrameTensor2 cf = curvature::ricci(flat, 2.0);
  CHECK(std::fabs(cf.rad_rad) < 1e-14);
  CHECK(std::fabs(cf.tan_tan) < 1e-14);
  const FrameTensor2 fd = curvature::fd_curvature_oracle(flat, 2.0);
  CHECK(std::fabs(fd.rad_rad) < 1e-9);
  CHECK(std::fabs(fd.tan_tan) < 1e-9);
  const FrameTensor2 q = curvature::substatic_tensor(flat, 2.0);
  CHECK(std::fabs(q.rad_rad) < 1e-14);
  CHECK(std::fabs(q.tan_tan) < 1e-14);
}

TEST_CASE("constant-curvature checks: de Sitter slice and round sphere factor") {
  // de Sitter slice: Ric = 2 g for n = 3
  const auto ds = catalog::desitter_cap(3);
  const FrameTensor2 cf = curvature::ricci(ds, 0.5);
  CHECK(cf.rad_rad == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cf.tan_tan == doctest::Approx(2.0).epsilon(1e-12));
  const FrameTensor2 fd = curvature::fd_curvature_oracle(ds, 0.5);
  CHECK(fd.rad_rad == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fd.tan_tan == doctest::Approx(2.0).epsilon(1e-6));

  // b = sin r cap (unit round sphere): Ric = 2 g for n = 3
  const auto cap = catalog::round_sphere_cap(3);
  const FrameTensor2 fd_cap = curvature::fd_curvature_oracle(cap, 1.1);
  CHECK(fd_cap.rad_rad == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fd_cap.tan_tan == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("dual-path agreement across the model catalog") {
  const auto schw = schwarzschild(1.0);
  const auto rn = reissner(1.0, 0.5);
  models::ModelSpec sds_spec;
  sds_spec.family = models::Family::schwarzschild_de_sitter;
  sds_spec.n = 3;
  sds_spec.mass = 0.2;
  sds_spec.lambda = 0.3;
  sds_spec.cross_section = models::CrossSection::round_sphere(2);
  const auto sds = models::build_model(sds_spec);
  models::ModelSpec ads_spec = sds_spec;
  ads_spec.family = models::Family::schwarzschild_ads;
  ads_spec.lambda = -3.0;
  const auto ads = models::build_model(ads_spec);

  for (const auto* t : {&schw, &rn, &sds, &ads}) {
    const double hi =
        std::isfinite(t->r_max) ? 0.9 * t->r_max : 40.0 * t->r_min;
    for (double r : log_grid(1.06 * t->r_min, hi, 24)) {
      if (!curvature::fd_oracle_applicable(*t, r)) continue;
      const FrameTensor2 cf = curvature::ricci(*t, r);
      const FrameTensor2 fd = curvature::fd_curvature_oracle(*t, r);
      CHECK(std::fabs(cf.rad_rad - fd.rad_rad) / (1.0 + std::fabs(fd.rad_rad)) < 1e-6);
      CHECK(std::fabs(cf.tan_tan - fd.tan_tan) / (1.0 + std::fabs(fd.tan_tan)) < 1e-6);
    }
  }
  // near-horizon evaluations are flagged rather than silently degraded
  CHECK_FALSE(curvature::fd_oracle_applicable(schw, schw.r_min * 1.01));
  CHECK_THROWS_AS(curvature::fd_curvature_oracle(schw, schw.r_min * 1.01), Error);
}

TEST_CASE("higher-dimensional dual-path agreement") {
  models::ModelSpec s;
  s.family = models::Family::reissner_nordstrom;
  s.n = 5;
  s.mass = 1.0;
  s.charge = 0.4;
  s.cross_section = models::CrossSection::round_sphere(4);
  const auto t = models::build_model(s);
  for (double r : {1.3 * t.r_min, 2.0 * t.r_min, 6.0 * t.r_min}) {
    const FrameTensor2 cf = curvature::ricci(t, r);
    const FrameTensor2 fd = curvature::fd_curvature_oracle(t, r);
    CHECK(std::fabs(cf.rad_rad - fd.rad_rad) / (1.0 + std::fabs(fd.rad_rad)) < 1e-6);
    CHECK(std::fabs(cf.tan_tan - fd.tan_tan) / (1.0 + std::fabs(fd.tan_tan)) < 1e-6);
  }
}

TEST_CASE("substatic tensor: vacuum equality and charged strictness") {
  const auto schw = schwarzschild(1.0);
  for (double r : log_grid(1.05 * schw.r_min, 50.0 * schw.r_min, 40)) {
    const FrameTensor2 q = curvature::substatic_tensor(schw, r);
    CHECK(std::fabs(q.rad_rad) < 1e-8);
    CHECK(std::fabs(q.tan_tan) < 1e-8);
  }

  // Reissner-Nordstrom: radial equality, tangential strictness
  const auto rn = reissner(1.0, 0.5);
  const FrameTensor2 q = curvature::substatic_tensor(rn, 3.0);
  CHECK(std::fabs(q.rad_rad) < 1e-10);
  // closed form (n-1)(n-2) q^2 f / r^{2n-2} = 2 q^2 f / r^4 for n = 3
  const double f3 = rn.f_value(3.0);
  CHECK(q.tan_tan == doctest::Approx(2.0 * 0.25 * f3 / 81.0).epsilon(1e-12));
  const FrameTensor2 q_fd = curvature::fd_substatic_oracle(rn, 3.0);
  CHECK(std::fabs(q.rad_rad - q_fd.rad_rad) < 1e-7);
  CHECK(std::fabs(q.tan_tan - q_fd.tan_tan) < 1e-7);
}

TEST_CASE("check_substatic verdicts") {
  const auto rn = reissner(1.0, 0.5);
  const auto grid = log_grid(1.05 * rn.r_min, 50.0 * rn.r_min, 100);
  CHECK(curvature::check_substatic(rn, grid).passed);

  // convex warp bend: Ric < 0 radially inside the bend
  const auto bad = catalog::convex_warp(3, 0.5, 2.0, 3.0);
  const auto bad_grid = log_grid(0.5, 20.0, 64);
  const auto rep = curvature::check_substatic(bad, bad_grid);
  CHECK_FALSE(rep.passed);
  // the fd oracle agrees on the violating sign
  double fd_min = 0.0;
  for (double r : bad_grid)
    fd_min = std::min(fd_min, curvature::fd_substatic_oracle(bad, r).rad_rad);
  CHECK(fd_min < -1e-6);

  // concave bend stays substatic
  const auto good = catalog::concave_warp(3, 0.3, 2.0, 3.0);
  CHECK(curvature::check_substatic(good, bad_grid).passed);
}

TEST_CASE("CD(0,1) conformal identity on both paths") {
  const auto flat = catalog::flat(3);
  CHECK(curvature::cd01_identity_check(flat, 2.0).lhs < 1e-14);

  const auto schw = schwarzschild(1.0);
  const auto ds = catalog::desitter_cap(3);
  CHECK(curvature::cd01_identity_check(schw, 3.0, curvature::CurvaturePath::closed_form).lhs <
        1e-10);
  CHECK(curvature::cd01_identity_check(schw, 3.0, curvature::CurvaturePath::finite_difference).lhs <
        1e-6);
  CHECK(curvature::cd01_identity_check(ds, 0.5, curvature::CurvaturePath::closed_form).lhs < 1e-10);
}

TEST_CASE("Li-Xia connection Ricci tensors") {
  const auto rn = reissner(1.0, 0.5);
  for (double r : {2.2, 3.0, 7.0, 20.0}) {
    const double f = rn.f_value(r);
    const FrameTensor2 q = curvature::substatic_tensor(rn, r);
    const FrameTensor2 ric = curvature::ricci(rn, r);

    // (0,1): f Ric^{u01} = Q
    const FrameTensor2 l01 = curvature::lixia_ricci(rn, r, 0.0, 1.0);
    CHECK(std::fabs(l01.rad_rad * f - q.rad_rad) < 1e-10);
    CHECK(std::fabs(l01.tan_tan * f - q.tan_tan) < 1e-10);

    // (0,0): Levi-Civita
    const FrameTensor2 l00 = curvature::lixia_ricci(rn, r, 0.0, 0.0);
    CHECK(l00.rad_rad == doctest::Approx(ric.rad_rad).epsilon(1e-13));
    CHECK(l00.tan_tan == doctest::Approx(ric.tan_tan).epsilon(1e-13));

    // (1/(n-1), 0) evaluated on the conformal metric with u* = (n-1) log f
    // recovers the substatic tensor after the frame rescaling: this is the
    // conformal relation between the two distinguished connections.
    const auto conf = curvature::conformal_triple(rn);
    const int n = rn.n;
    double fv, fp, fpp;
    rn.f->eval(r, fv, fp, fpp);
    const double up = (n - 1) * fp / fv;
    const double upp = (n - 1) * (fpp / fv - fp * fp / (fv * fv));
    const FrameTensor2 ric_c = curvature::ricci(conf, r);
    const FrameTensor2 hess_c = curvature::hessian_radial(conf, r, up, upp);
    const double F = fv * fv;
    const double du2 = (F * up) * (F * up);
    FrameTensor2 lc;
    lc.rad_rad = ric_c.rad_rad - hess_c.rad_rad + du2 / (n - 1);
    lc.tan_tan = ric_c.tan_tan - hess_c.tan_tan;
    CHECK(std::fabs(lc.rad_rad - q.rad_rad * fv) < 1e-10);
    CHECK(std::fabs(lc.tan_tan - q.tan_tan * fv) < 1e-10);
  }
}

TEST_CASE("stress-energy and the null energy condition") {
  // vacuum: all stress components vanish
  const auto schw = schwarzschild(1.0);
  for (double r : {2.5, 4.0, 10.0}) {
    const auto T = curvature::stress_energy(schw, r, 0.0);
    CHECK(std::fabs(T.T_tt) < 1e-8);
    CHECK(std::fabs(T.T_rad) < 1e-8);
    CHECK(std::fabs(T.T_tan) < 1e-8);
  }

  const auto rn = reissner(1.0, 0.5);
  const auto rep = curvature::nec_check(rn, 0.0, 1000);
  CHECK(rep.passed);
  CHECK(rep.lhs >= -1e-10);

  // sign equivalence both ways on a violating profile
  const auto bad = catalog::convex_warp(3, 0.5, 2.0, 3.0);
  const auto grid = log_grid(0.5, 20.0, 64);
  const auto bad_nec = curvature::nec_check(bad, 0.0, 400, grid);
  CHECK_FALSE(bad_nec.passed);
  CHECK(bad_nec.lhs < 0.0);
}

TEST_CASE("rescaling the metric keeps the eigenvalue signs of Q") {
  // g -> c^2 g means f(r) -> f(r/c), b(r) -> c b(r/c) in the radial chart
  const auto rn = reissner(1.0, 0.5);
  for (double c : {0.5, 2.0}) {
    models::ProfileTriple scaled = rn;
    scaled.r_min = c * rn.r_min;
    scaled.r_max = std::isfinite(rn.r_max) ? c * rn.r_max : rn.r_max;
    const auto fsrc = rn.f;
    const auto bsrc = rn.b;
    scaled.f = models::make_analytic_profile(
        [fsrc, c](long double r) { return fsrc->value_ld(r / c); },
        [fsrc, c](long double r) {
          double v, dv, ddv;
          fsrc->eval(static_cast<double>(r / c), v, dv, ddv);
          return (long double)(dv / c);
        },
        [fsrc, c](long double r) {
          double v, dv, ddv;
          fsrc->eval(static_cast<double>(r / c), v, dv, ddv);
          return (long double)(ddv / (c * c));
        });
    scaled.b = models::make_analytic_profile(
        [bsrc, c](long double r) { return c * bsrc->value_ld(r / c); },
        [bsrc, c](long double r) {
          double v, dv, ddv;
          bsrc->eval(static_cast<double>(r / c), v, dv, ddv);
          return (long double)dv;
        },
        [bsrc, c](long double r) {
          double v, dv, ddv;
          bsrc->eval(static_cast<double>(r / c), v, dv, ddv);
          return (long double)(ddv / c);
        });
    for (double r0 : {2.2, 3.0, 8.0}) {
      const FrameTensor2 q = curvature::substatic_tensor(rn, r0);
      const FrameTensor2 qs = curvature::substatic_tensor(scaled, c * r0);
      CHECK(std::signbit(q.rad_rad + 1e-300) == std::signbit(qs.rad_rad + 1e-300));
      CHECK((q.tan_tan > 0) == (qs.tan_tan > 0));
    }
  }
}
