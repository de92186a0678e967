#include <cmath>
#include <vector>

#include "doctest.h"
#include "substat/catalog.hpp"
#include "substat/conformal.hpp"
#include "substat/errors.hpp"
#include "substat/functionals.hpp"
#include "substat/models.hpp"
#include "substat/quadrature.hpp"

using namespace substat;
using functionals::Base;

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

TEST_CASE("classical limit: Euclidean space from a point base") {
  const auto flat = catalog::flat(3);
  const auto grid = log_grid(0.05, 50.0, 30);
  const auto s = functionals::volume_functional(flat, Base::point(), grid, 3.0);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    CHECK(s.A[i] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.V[i] == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(s.monotone_A);
  CHECK(s.monotone_V);
}

TEST_CASE("models have constant area ratio from sphere bases") {
  const auto schw = schwarzschild(0.5);
  const auto grid = log_grid(0.1, 1000.0, 50);
  const auto s = functionals::area_functional(schw, Base::sphere(2.0), grid);
  for (double a : s.A) CHECK(std::fabs(a - 1.0) < 1e-12);
  CHECK(s.monotone_A);

  // scaled cross-section scales A
  models::ModelSpec half = {};
  half.family = models::Family::schwarzschild;
  half.n = 3;
  half.mass = 0.5;
  half.cross_section.kind = "einstein";
  half.cross_section.dim = 2;
  half.cross_section.unit_area = 0.5 * models::unit_sphere_area(2);
  half.cross_section.einstein_const = 1.0;
  const auto t_half = models::build_model(half);
  const auto s_half = functionals::area_functional(t_half, Base::sphere(2.0), grid);
  for (double a : s_half.A) CHECK(a == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("volume functional: identity with area and the k-family bound") {
  const auto schw = schwarzschild(0.5);
  const auto grid = log_grid(0.2, 200.0, 25);
  const auto s_n = functionals::volume_functional(schw, Base::sphere(2.0), grid, 3.0);
  for (std::size_t i = 0; i < s_n.t.size(); ++i)
    CHECK(s_n.V[i] == doctest::Approx(s_n.A[i]).epsilon(1e-8));

  for (double k : {1.0, 1.5, 3.0}) {
    const auto s = functionals::volume_functional(schw, Base::sphere(2.0), grid, k);
    for (std::size_t i = 0; i < s.t.size(); ++i)
      CHECK(s.V[i] - (3.0 / k) * s.A[i] >= -1e-9);
    CHECK(s.monotone_V);
  }

  // the derivative identity t V' + k V - n A = 0 (forward differences)
  const auto bent = catalog::concave_warp(3, 0.3, 2.0, 3.0);
  std::vector<double> tg;
  for (int i = 0; i <= 40; ++i) tg.push_back(1.0 + 0.25 * i);
  const auto sv = functionals::volume_functional(bent, Base::sphere(1.0), tg, 2.0);
  for (std::size_t i = 1; i + 1 < sv.t.size(); ++i) {
    const double dv = (sv.V[i + 1] - sv.V[i - 1]) / (sv.t[i + 1] - sv.t[i - 1]);
    const double resid = sv.t[i] * dv + 2.0 * sv.V[i] - 3.0 * sv.A[i];
    CHECK(std::fabs(resid) < 5e-3);  // O(dt^2) finite-difference residual
  }

  // coarea route: V(t) = (n/t^k) int_0^t tau^{k-1} A(tau) dtau, independent of
  // the volume-measure quadrature in r
  functionals::RadialChart chart(bent, Base::sphere(1.0), 200.0);
  for (double k : {1.0, 2.0, 3.0}) {
    const double t = 7.5;
    const double direct = chart.volume_ratio(t, k);
    const double via_area =
        3.0 / std::pow(t, k) *
        quad::integrate(
            [&](double tau) { return std::pow(tau, k - 1) * chart.area_ratio(tau); }, 0.0, t,
            1e-10, 1e-14);
    CHECK(direct == doctest::Approx(via_area).epsilon(1e-8));
  }
}

TEST_CASE("monotonicity on a strictly substatic warp bend") {
  const auto bent = catalog::concave_warp(3, 0.3, 2.0, 3.0);
  const auto grid = log_grid(0.05, 60.0, 60);
  const auto s = functionals::volume_functional(bent, Base::sphere(1.0), grid, 3.0);
  CHECK(s.worst_forward_diff_A <= 1e-9);
  CHECK(s.worst_forward_diff_V <= 1e-6);
  // A actually drops across the bend
  CHECK(s.A.front() > s.A.back() + 1e-3);
}

TEST_CASE("AVR estimates") {
  const auto schw = schwarzschild(0.5);
  const auto est = functionals::avr_estimate(schw, Base::sphere(2.0));
  CHECK(est.certified);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(est.via_volume == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(est.error_bar < 1e-6);

  const double r0s[] = {2.0, 3.0, 5.0};
  CHECK(functionals::avr_base_independence(schw, r0s, 1e-6).passed);

  // point vs sphere bases in Euclidean space
  const auto flat = catalog::flat(3);
  const double point_avr = functionals::avr_estimate(flat, Base::point()).value;
  const double sphere_avr = functionals::avr_estimate(flat, Base::sphere(2.0)).value;
  CHECK(std::fabs(point_avr - sphere_avr) < 1e-8);
  CHECK(point_avr == doctest::Approx(1.0).epsilon(1e-8));

  const auto rn = reissner(1.0, 0.5);
  const double rn0s[] = {2.5, 4.0};
  CHECK(functionals::avr_base_independence(rn, rn0s, 1e-6).passed);

  // cone over a smaller cross-section: AVR = unit_area / |S^{n-1}|
  models::ModelSpec cone;
  cone.family = models::Family::space_form;
  cone.n = 3;
  cone.cross_section.kind = "einstein";
  cone.cross_section.dim = 2;
  cone.cross_section.unit_area = 0.6 * models::unit_sphere_area(2);
  cone.cross_section.einstein_const = 1.0;
  const auto t_cone = models::build_model(cone);
  CHECK(functionals::avr_estimate(t_cone, Base::sphere(1.0)).value ==
        doctest::Approx(0.6).epsilon(1e-8));

  // twisted product: vanishing AVR with A eta^{n-1} constant
  const auto tw = catalog::twisted_product(3);
  const auto est_tw = functionals::avr_estimate(tw, Base::sphere(1.0, 1.0));
  CHECK(est_tw.value < 1e-6);
  const auto s = functionals::area_functional(tw, Base::sphere(1.0, 1.0), log_grid(1, 500, 40));
  const double c0 = s.A[0] * s.eta[0] * s.eta[0];
  for (std::size_t i = 0; i < s.t.size(); ++i)
    CHECK(s.A[i] * s.eta[i] * s.eta[i] == doctest::Approx(c0).epsilon(1e-8));

  // ends that are not f-complete are refused
  models::ModelSpec ads;
  ads.family = models::Family::schwarzschild_ads;
  ads.n = 3;
  ads.mass = 1.0;
  ads.lambda = -3.0;
  ads.cross_section = models::CrossSection::round_sphere(2);
  CHECK_THROWS_AS(functionals::avr_estimate(models::build_model(ads), Base::sphere(2.0)), Error);
}

TEST_CASE("small-t limit at a center point") {
  const auto flat = catalog::flat(3);
  const auto rep_flat = functionals::small_t_limit_check(flat);
  CHECK(rep_flat.passed);
  CHECK(rep_flat.rhs == doctest::Approx(1.0));

  const auto ds = catalog::desitter_cap(3);
  const auto rep_ds = functionals::small_t_limit_check(ds);
  CHECK(rep_ds.passed);
  CHECK(rep_ds.rhs == doctest::Approx(1.0));
  CHECK(rep_ds.lhs == doctest::Approx(1.0).epsilon(1e-4));

  // rescaled cap with f(0) = 0.8: limit 0.8^{1-n} = 1.5625 for n = 3
  const auto cap = catalog::rescaled_cap(3, 0.8);
  const auto rep = functionals::small_t_limit_check(cap);
  CHECK(rep.passed);
  CHECK(rep.rhs == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(rep.lhs == doctest::Approx(1.5625).epsilon(1e-4));

  // sphere-base-only triples are rejected
  CHECK_THROWS_AS(functionals::small_t_limit_check(schwarzschild(0.5)), Error);
}

TEST_CASE("rigidity detection") {
  const auto schw = schwarzschild(0.5);
  const auto grid = log_grid(0.1, 500.0, 50);
  const auto s = functionals::area_functional(schw, Base::sphere(2.0), grid);
  const auto rig = functionals::detect_rigidity(s, 1e-9);
  CHECK(rig.is_constant);
  CHECK(rig.t1 == doctest::Approx(grid.front()));
  CHECK(rig.t2 == doctest::Approx(grid.back()));
  CHECK(rig.max_warp_dev < 1e-8);
  CHECK(rig.phi_coeff == 0.0);
  CHECK(rig.psi_coeff == 0.0);

  // Euclidean: fully rigid
  const auto flat_series =
      functionals::area_functional(catalog::flat(3), Base::point(), log_grid(0.1, 50, 30));
  CHECK(functionals::detect_rigidity(flat_series, 1e-9).is_constant);

  // warp bend: the bend interval is excluded from rigid windows
  const auto bent = catalog::concave_warp(3, 0.3, 4.0, 3.0);
  std::vector<double> tg;
  for (int i = 0; i <= 300; ++i) tg.push_back(0.05 + i * 0.1);
  const auto sb = functionals::area_functional(bent, Base::sphere(1.0), tg);
  const auto rigb = functionals::detect_rigidity(sb, 1e-9);
  const double rho_bend = 3.0 - 1.0;  // f == 1: rho = r - r0; bend centered at r = 3
  for (const auto& [a, b] : rigb.windows) {
    const bool contains_bend = a < rho_bend && rho_bend < b;
    CHECK_FALSE(contains_bend);
  }
}

TEST_CASE("base validation") {
  const auto schw = schwarzschild(0.5);
  CHECK_THROWS_AS(functionals::area_functional(schw, Base::point(), log_grid(0.1, 10, 5)), Error);
  CHECK_THROWS_AS(
      functionals::area_functional(schw, Base::sphere(schw.r_min), log_grid(0.1, 10, 5)), Error);
  CHECK_THROWS_AS(
      functionals::volume_functional(schw, Base::sphere(2.0), log_grid(0.1, 10, 5), -1.0), Error);
}
