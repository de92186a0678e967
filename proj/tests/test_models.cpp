#include <cmath>
#include <cstring>

#include "doctest.h"
#include "substat/catalog.hpp"
#include "substat/errors.hpp"
#include "substat/models.hpp"

using namespace substat;
using models::Family;
using models::ModelSpec;

namespace {

ModelSpec closed_spec(Family fam, int n, double m, double q, double lambda) {
  ModelSpec s;
  s.family = fam;
  s.n = n;
  s.mass = m;
  s.charge = q;
  s.lambda = lambda;
  s.cross_section = models::CrossSection::round_sphere(n - 1);
  return s;
}

}  // namespace

TEST_CASE("horizon radii of the closed-form families") {
  // root of 1 - 2m/r at 2m
  const auto schw = models::build_model(closed_spec(Family::schwarzschild, 3, 0.5, 0, 0));
  CHECK(schw.r_min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(schw.has_horizon);
  CHECK(std::isinf(schw.r_max));

  // r_+ = m + sqrt(m^2 - q^2)
  const auto rn = models::build_model(closed_spec(Family::reissner_nordstrom, 3, 1.0, 0.6, 0));
  CHECK(rn.r_min == doctest::Approx(1.8).epsilon(1e-13));

  // pure de Sitter: no horizon boundary, domain [0, 1)
  const auto ds = models::build_model(closed_spec(Family::space_form, 3, 0, 0, 3.0));
  CHECK(!ds.has_horizon);
  CHECK(ds.r_min == 0.0);
  CHECK(ds.r_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ds.f_value(0.5) == doctest::Approx(std::sqrt(1.0 - 0.25)).epsilon(1e-14));

  // horizon value clamps to zero by definition and the root is polished
  for (const auto* t : {&schw, &rn}) {
    CHECK(t->f_value(t->r_min) == 0.0);
    const double just_outside = t->r_min * (1.0 + 1e-9);
    CHECK(t->f_value(just_outside) > 0.0);
  }

  // two-horizon de Sitter domain: black-hole root below, cosmological above
  const auto sds =
      models::build_model(closed_spec(Family::schwarzschild_de_sitter, 3, 0.2, 0, 0.3));
  CHECK(sds.has_horizon);
  CHECK(std::isfinite(sds.r_max));
  CHECK(sds.r_min < sds.r_max);
  const double mid = 0.5 * (sds.r_min + sds.r_max);
  CHECK(sds.f_value(mid) > 0.0);
  CHECK(std::fabs(std::pow(sds.f_value(sds.r_max * (1 - 1e-10)), 2)) < 1e-8);
}

TEST_CASE("construction failures: naked singularity, empty domain, bad table") {
  CHECK_THROWS_WITH_AS(models::build_model(closed_spec(Family::schwarzschild, 3, 1.0, 2.0, 0)),
                       doctest::Contains("NakedSingularity"), Error);
  CHECK_THROWS_WITH_AS(models::build_model(closed_spec(Family::reissner_nordstrom, 3, 1.0, 1.0, 0)),
                       doctest::Contains("NakedSingularity"), Error);

  // over-extremal mass-Lambda pair (9 m^2 Lambda > 1 for n = 3): f^2 < 0 everywhere
  CHECK_THROWS_WITH_AS(
      models::build_model(closed_spec(Family::schwarzschild_de_sitter, 3, 1.0, 0, 1.0)),
      doctest::Contains("DomainEmpty"), Error);

  ModelSpec bad = closed_spec(Family::custom, 3, 0, 0, 0);
  bad.profile_table = {{1, 1, 1}, {2, 1, 2}, {1.5, 1, 1.5}, {3, 1, 3},
                       {4, 1, 4}, {5, 1, 5}, {6, 1, 6},     {7, 1, 7}};
  CHECK_THROWS_AS(models::build_model(bad), Error);

  ModelSpec tiny = closed_spec(Family::custom, 3, 0, 0, 0);
  tiny.profile_table = {{1, 1, 1}, {2, 1, 2}};
  CHECK_THROWS_AS(models::build_model(tiny), Error);
}

TEST_CASE("eval_f matches the closed form to machine precision") {
  const auto schw = models::build_model(closed_spec(Family::schwarzschild, 3, 0.5, 0, 0));
  const auto v = models::eval_f(schw, 2.0);
  CHECK(v[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  // f' = m/(r^2 f), f'' from the quotient rule
  CHECK(v[1] == doctest::Approx(0.5 / (4.0 * std::sqrt(0.5))).epsilon(1e-13));

  CHECK_THROWS_AS(models::eval_f(schw, 0.5), Error);

  // Eq. (1.3) coefficient identity on random radii for every family
  const auto rn = models::build_model(closed_spec(Family::reissner_nordstrom, 4, 1.0, 0.5, 0));
  const auto sds = models::build_model(closed_spec(Family::schwarzschild_de_sitter, 3, 0.2, 0, 0.3));
  const auto ads = models::build_model(closed_spec(Family::schwarzschild_ads, 3, 1.0, 0, -3.0));
  for (const auto* t : {&schw, &rn, &sds, &ads}) {
    const int n = t->n;
    for (int i = 1; i <= 50; ++i) {
      const double hi = std::isfinite(t->r_max) ? t->r_max : 40.0 * std::max(1.0, t->r_min);
      const double r = (t->r_min + 1e-3) + (hi * 0.999 - t->r_min - 1e-3) * i / 50.0;
      const double f = t->f_value(r);
      const double w = 1.0 - 2.0 * t->lambda * r * r / (n * (n - 1.0)) -
                       2.0 * t->mass * std::pow(r, 2.0 - n) +
                       t->charge * t->charge * std::pow(r, 4.0 - 2.0 * n);
      CHECK(std::fabs(f * f - w) < 1e-12);
    }
  }
}

TEST_CASE("custom spline model reproduces the sampled closed form") {
  ModelSpec spec = closed_spec(Family::custom, 3, 0, 0, 0);
  const int kSamples = 2400;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = 1.5 * std::pow(20.0 / 1.5, double(i) / kSamples);
    spec.profile_table.push_back({r, std::sqrt(1.0 - 1.0 / r), r});
  }
  const auto t = models::build_model(spec);
  CHECK(t.r_min == doctest::Approx(1.5));
  CHECK(t.r_max == doctest::Approx(20.0));
  double worst = 0.0;
  for (int i = 0; i <= 997; ++i) {
    const double r = 1.5 + (20.0 - 1.5) * i / 997.0;
    worst = std::max(worst, std::fabs(t.f_value(r) - std::sqrt(1.0 - 1.0 / r)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("build_model is deterministic") {
  const auto a = models::build_model(closed_spec(Family::reissner_nordstrom, 3, 1.0, 0.5, 0));
  const auto b = models::build_model(closed_spec(Family::reissner_nordstrom, 3, 1.0, 0.5, 0));
  CHECK(std::memcmp(&a.r_min, &b.r_min, sizeof(double)) == 0);
  for (int i = 0; i <= 64; ++i) {
    const double r = a.r_min * (1.0 + i * 0.25);
    const double fa = a.f_value(r), fb = b.f_value(r);
    CHECK(std::memcmp(&fa, &fb, sizeof(double)) == 0);
  }
}

TEST_CASE("end classification across the catalog") {
  // the verdicts hold across the mass range, not just one parameter choice
  for (double m : {0.2, 1.0, 5.0}) {
    const auto schw = models::build_model(closed_spec(Family::schwarzschild, 3, m, 0, 0));
    CHECK(models::classify_end(schw).kind == models::EndKind::f_complete);

    const auto ads = models::build_model(closed_spec(Family::schwarzschild_ads, 3, m, 0, -3.0));
    const auto end_ads = models::classify_end(ads);
    CHECK(end_ads.kind == models::EndKind::conformally_compact);
    CHECK(std::isfinite(end_ads.rho_total));
  }

  // f = sqrt(r): int dr/f^2 = int dr/r diverges
  CHECK(models::classify_end(catalog::power_law_f(3, 0.5)).kind == models::EndKind::f_complete);
}

TEST_CASE("f-pinching window test") {
  const auto schw = models::build_model(closed_spec(Family::schwarzschild, 3, 0.5, 0, 0));
  CHECK(models::check_f_pinching(schw, 0.5, 2.0, 100.0).passed);
  CHECK(models::check_f_pinching(catalog::flat(3), 0.1, 2.0, 100.0).passed);
  // f = r^2 violates the upper bound for every k < 1
  CHECK_FALSE(models::check_f_pinching(catalog::power_law_f(3, 2.0), 0.9, 2.0, 100.0).passed);
  CHECK_THROWS_AS(models::check_f_pinching(schw, 1.5, 2.0, 100.0), Error);
}

TEST_CASE("uniformity criteria") {
  const auto schw = models::build_model(closed_spec(Family::schwarzschild, 3, 1.0, 0, 0));
  const auto uni = models::check_uniformity_criteria(schw);
  CHECK(uni.passed);
  CHECK(uni.context.find("f -> 1") != std::string::npos);

  const auto flat_uni = models::check_uniformity_criteria(catalog::flat(3));
  CHECK(flat_uni.passed);

  // oscillating tail defeats both criteria but stays f-complete
  const auto osc = catalog::oscillating_f(3);
  CHECK(models::classify_end(osc).kind == models::EndKind::f_complete);
  const auto osc_uni = models::check_uniformity_criteria(osc);
  CHECK_FALSE(osc_uni.passed);
  CHECK(osc_uni.context.find("not certified") != std::string::npos);

  // conformally compact end: criteria inapplicable
  const auto ads = models::build_model(closed_spec(Family::schwarzschild_ads, 3, 1.0, 0, -3.0));
  CHECK_THROWS_AS(models::check_uniformity_criteria(ads), Error);
}

TEST_CASE("cross-section validation") {
  models::CrossSection cs = models::CrossSection::round_sphere(2);
  CHECK(cs.unit_area == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK_NOTHROW(cs.validate());
  cs.einstein_const = 0.5;
  CHECK_THROWS_AS(cs.validate(), Error);

  models::CrossSection gen;
  gen.kind = "einstein";
  gen.dim = 2;
  gen.unit_area = 2.0 * M_PI;  // half the round area: quotient-like section
  gen.einstein_const = 1.0;
  CHECK_NOTHROW(gen.validate());
}
