#include "substat/catalog.hpp"

#include <cmath>
#include <limits>

#include "substat/errors.hpp"

namespace substat::catalog {

using models::CrossSection;
using models::make_analytic_profile;
using models::make_constant_profile;
using models::make_linear_profile;

namespace {

ProfileTriple base_triple(int n) {
  ProfileTriple t;
  t.n = n;
  t.cross_section = CrossSection::round_sphere(n - 1);
  t.family = models::Family::custom;
  return t;
}

long double softplus(long double x, long double w) {
  const long double z = w * x;
  if (z > 40.0L) return x;
  if (z < -40.0L) return std::exp(z) / w;
  return std::log1p(std::exp(z)) / w;
}

long double sigmoid(long double x, long double w) {
  const long double z = w * x;
  if (z > 40.0L) return 1.0L;
  if (z < -40.0L) return std::exp(z);
  return 1.0L / (1.0L + std::exp(-z));
}

ProfileTriple warp_bend(int n, double a, double w, double rc, double sign) {
  if (!(a > 0 && a < 1)) fail(ErrorCode::ConfigError, "warp bend amplitude must be in (0,1)");
  ProfileTriple t = base_triple(n);
  t.r_min = 0.25;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_constant_profile(1.0);
  t.b = make_analytic_profile(
      [a, w, rc, sign](long double r) { return r + sign * a * softplus(r - rc, w); },
      [a, w, rc, sign](long double r) { return 1.0L + sign * a * sigmoid(r - rc, w); },
      [a, w, rc, sign](long double r) {
        const long double s = sigmoid(r - rc, w);
        return sign * a * w * s * (1.0L - s);
      });
  return t;
}

}  // namespace

ProfileTriple flat(int n) {
  ProfileTriple t = base_triple(n);
  t.r_min = 0.0;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_constant_profile(1.0);
  t.b = make_linear_profile();
  return t;
}

ProfileTriple desitter_cap(int n) {
  models::ModelSpec spec;
  spec.family = models::Family::space_form;
  spec.n = n;
  spec.lambda = 0.5 * n * (n - 1);  // f^2 = 1 - r^2
  spec.cross_section = CrossSection::round_sphere(n - 1);
  return models::build_model(spec);
}

ProfileTriple rescaled_cap(int n, double f0) {
  if (!(f0 > 0)) fail(ErrorCode::ConfigError, "f0 must be positive");
  ProfileTriple t = base_triple(n);
  t.r_min = 0.0;
  t.r_max = f0 * (1.0 - 1e-12);
  t.has_horizon = false;
  const long double c = f0;
  t.f = make_analytic_profile(
      [c](long double r) { return std::sqrt(c * c - r * r); },
      [c](long double r) { return -r / std::sqrt(c * c - r * r); },
      [c](long double r) {
        const long double f = std::sqrt(c * c - r * r);
        return -c * c / (f * f * f);
      });
  t.b = make_analytic_profile([c](long double r) { return r / c; },
                              [c](long double) { return 1.0L / c; },
                              [](long double) { return 0.0L; });
  return t;
}

ProfileTriple round_sphere_cap(int n) {
  ProfileTriple t = base_triple(n);
  t.r_min = 0.0;
  t.r_max = M_PI * (1.0 - 1e-9);
  t.has_horizon = false;
  t.f = make_constant_profile(1.0);
  t.b = make_analytic_profile([](long double r) { return std::sin(r); },
                              [](long double r) { return std::cos(r); },
                              [](long double r) { return -std::sin(r); });
  return t;
}

ProfileTriple concave_warp(int n, double amplitude, double steepness, double center) {
  return warp_bend(n, amplitude, steepness, center, -1.0);
}

ProfileTriple convex_warp(int n, double amplitude, double steepness, double center) {
  return warp_bend(n, amplitude, steepness, center, +1.0);
}

ProfileTriple twisted_product(int n) {
  ProfileTriple t = base_triple(n);
  t.r_min = 0.0;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_constant_profile(1.0);
  t.b = make_constant_profile(1.0);
  return t;
}

ProfileTriple power_law_f(int n, double p, double r_lo) {
  ProfileTriple t = base_triple(n);
  t.r_min = r_lo;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_analytic_profile(
      [p](long double r) { return std::pow(r, (long double)p); },
      [p](long double r) { return p * std::pow(r, (long double)(p - 1)); },
      [p](long double r) { return p * (p - 1) * std::pow(r, (long double)(p - 2)); });
  t.b = make_linear_profile();
  return t;
}

ProfileTriple oscillating_f(int n, double r_lo) {
  ProfileTriple t = base_triple(n);
  t.r_min = r_lo;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_analytic_profile(
      [](long double r) { return 1.0L + 0.5L * std::sin(std::log(r)); },
      [](long double r) { return 0.5L * std::cos(std::log(r)) / r; },
      [](long double r) {
        return -0.5L * (std::sin(std::log(r)) + std::cos(std::log(r))) / (r * r);
      });
  t.b = make_linear_profile();
  return t;
}

ProfileTriple wavy_warp(int n) {
  ProfileTriple t = base_triple(n);
  t.r_min = 0.5;
  t.r_max = std::numeric_limits<double>::infinity();
  t.has_horizon = false;
  t.f = make_constant_profile(1.0);
  t.b = make_analytic_profile([](long double r) { return r + 0.1L * std::sin(r); },
                              [](long double r) { return 1.0L + 0.1L * std::cos(r); },
                              [](long double r) { return -0.1L * std::sin(r); });
  return t;
}

}  // namespace substat::catalog
