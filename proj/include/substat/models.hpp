#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "substat/report.hpp"

namespace substat::models {

// |S^dim| and |B^dim| of the unit sphere/ball.
double unit_sphere_area(int dim);
double unit_ball_volume(int dim);

enum class Family {
  space_form,
  schwarzschild,
  reissner_nordstrom,
  schwarzschild_de_sitter,
  schwarzschild_ads,
  custom,
};

const char* family_name(Family f);
Family family_from_string(const std::string& s);

// Closed (n-1)-dimensional Einstein cross-section, Ric = (n-2) * einstein_const * g.
struct CrossSection {
  int dim = 2;
  double unit_area = 0.0;
  double einstein_const = 1.0;
  std::string kind = "round-sphere";

  static CrossSection round_sphere(int dim);
  void validate() const;
};

struct ModelSpec {
  Family family = Family::schwarzschild;
  int n = 3;
  double lambda = 0.0;  // cosmological constant
  double mass = 0.0;
  double charge = 0.0;
  CrossSection cross_section = CrossSection::round_sphere(2);
  std::vector<std::array<double, 3>> profile_table;  // (r, f, b), custom family only
};

// Radial scalar profile with two derivatives. Implementations must be pure.
class ScalarProfile {
 public:
  virtual ~ScalarProfile() = default;
  virtual void eval(double r, double& v, double& dv, double& ddv) const = 0;
  // High-precision value for finite-difference consumers; default degrades to double.
  virtual long double value_ld(long double r) const {
    double v, dv, ddv;
    eval(static_cast<double>(r), v, dv, ddv);
    return v;
  }
  double value(double r) const {
    double v, dv, ddv;
    eval(r, v, dv, ddv);
    return v;
  }
  double deriv(double r) const {
    double v, dv, ddv;
    eval(r, v, dv, ddv);
    return dv;
  }
};

using ProfilePtr = std::shared_ptr<const ScalarProfile>;

// Analytic profile from long-double valued closures (value, d, dd).
ProfilePtr make_analytic_profile(std::function<long double(long double)> v,
                                 std::function<long double(long double)> dv,
                                 std::function<long double(long double)> ddv);
ProfilePtr make_constant_profile(double c);
ProfilePtr make_linear_profile();  // b(r) = r
// f = sqrt(w) for the metric coefficient family w(r) = a0 + a2 r^2 + am r^{2-n} + aq r^{4-2n}.
ProfilePtr make_sqrt_poly_profile(int n, double a0, double a2, double am, double aq,
                                  double horizon_r);
ProfilePtr make_spline_profile(const std::vector<double>& r, const std::vector<double>& v);

// Rotationally symmetric triple with metric g = dr (x) dr / f^2 + b^2 g_Sigma.
struct ProfileTriple {
  int n = 3;
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  bool has_horizon = false;
  CrossSection cross_section;
  ProfilePtr f;
  ProfilePtr b;

  Family family = Family::custom;
  double lambda = 0.0, mass = 0.0, charge = 0.0;

  // value, d/dr, d2/dr2; throws OutOfDomain outside [r_min, r_max].
  std::array<double, 3> eval_f(double r) const;
  std::array<double, 3> eval_b(double r) const;
  double f_value(double r) const { return eval_f(r)[0]; }
  double b_value(double r) const { return eval_b(r)[0]; }
  void check_domain(double r) const;
  bool capped() const { return !has_horizon && r_min == 0.0; }
  // Mean curvature of the coordinate sphere {r} w.r.t. the outward normal.
  // Certified against the first-variation oracle in `surfaces`.
  double sphere_mean_curvature(double r) const;
};

ProfileTriple build_model(const ModelSpec& spec);

// (f, f', f'') with domain check; at a horizon the value is exactly 0 and the
// derivatives are +inf (one-sided square-root blowup).
std::array<double, 3> eval_f(const ProfileTriple& triple, double r);

enum class EndKind { f_complete, conformally_compact, undetermined };

struct EndClass {
  EndKind kind = EndKind::undetermined;
  double rho_total = std::numeric_limits<double>::infinity();
  std::string evidence;
};

const char* end_kind_name(EndKind k);

EndClass classify_end(const ProfileTriple& triple);

// Tail pinching c r^{-k} < f < C r^{k} on [r_a, r_b]; empirical c, C plus an
// effective-exponent trend test.
CheckReport check_f_pinching(const ProfileTriple& triple, double k, double r_a, double r_b);

// Certifies uniformity via f -> 1 at infinity or |grad f| <= C rho^{-1-eps}.
CheckReport check_uniformity_criteria(const ProfileTriple& triple);

}  // namespace substat::models
