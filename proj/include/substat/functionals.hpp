#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "substat/models.hpp"
#include "substat/report.hpp"

namespace substat::functionals {

using models::ProfileTriple;

struct Base {
  enum class Kind { center_point, coordinate_sphere };
  Kind kind = Kind::coordinate_sphere;
  double r0 = 0.0;
  double eta0 = -1.0;  // <= 0: default b/b' (sphere) or 0 (point)

  static Base point();
  static Base sphere(double r0, double eta0 = -1.0);
  std::string describe() const;
};

// Cached radial chart for one base: rho(r), its inverse, eta, and the
// cumulative volume integrand. All queries are pure after construction.
class RadialChart {
 public:
  RadialChart(const ProfileTriple& triple, Base base, double r_cap);

  double rho_of_r(double r) const;
  double r_of_rho(double t) const;
  double eta_of_r(double r) const;
  double area_ratio_of_r(double r) const;  // A at the sphere through r
  double area_ratio(double t) const { return area_ratio_of_r(r_of_rho(t)); }
  // V(t) = unit_area/(|B^n| t^k) * int_{r_base}^{r(t)} rho^{k-1} b^{n-1}/(f^2 eta^{n-1}) dr
  double volume_ratio(double t, double k) const;
  const ProfileTriple& triple() const { return *triple_; }
  const Base& base() const { return base_; }
  double r_base() const { return r_base_; }

 private:
  const ProfileTriple* triple_;
  Base base_;
  double r_base_, eta0_, r_cap_;
  std::vector<double> nodes_, rho_nodes_;
};

struct ComparisonSeries {
  std::string base;
  int n = 0;
  double k = 0.0;  // volume exponent (0 for area-only series)
  std::vector<double> t, A, V;
  std::vector<double> r, eta, b_of_r, f_of_r;  // samples along the grid
  bool monotone_A = false, monotone_V = false;
  double worst_forward_diff_A = 0.0, worst_forward_diff_V = 0.0;
};

ComparisonSeries area_functional(const ProfileTriple& triple, Base base,
                                 std::span<const double> t_grid);
ComparisonSeries volume_functional(const ProfileTriple& triple, Base base,
                                   std::span<const double> t_grid, double k);

struct AvrEstimate {
  double value = 0.0;
  double error_bar = 0.0;
  bool certified = false;
  std::string criterion;   // which uniformity criterion fired
  double via_volume = 0.0; // cross-check limit of V with k = n
};

// Richardson-extrapolated limit of A(t) on the geometric grid {T, 2T, 4T, 8T}.
// r_infinity <= 0 selects the default 1e3 * max(r_min, 1) tail radius.
AvrEstimate avr_estimate(const ProfileTriple& triple, Base base, double r_infinity = 0.0);

CheckReport avr_base_independence(const ProfileTriple& triple, std::span<const double> r0_list,
                                  double tol = 1e-6);

// lim_{t->0} A(t) = 1/f(p)^{n-1} for the distance from a center point.
CheckReport small_t_limit_check(const ProfileTriple& triple, double tol = 1e-4);

struct RigidityReport {
  bool is_constant = false;      // some window of positive length is rigid
  double t1 = 0.0, t2 = 0.0;     // largest rigid window
  double phi_coeff = 0.0, psi_coeff = 0.0;
  double max_warp_dev = 0.0;     // max relative deviation of b/eta on the window
  std::vector<std::pair<double, double>> warped_form;  // (f, eta) samples on the window
  std::vector<std::pair<double, double>> windows;      // all rigid windows
};

RigidityReport detect_rigidity(const ComparisonSeries& series, double tol = 1e-9);

}  // namespace substat::functionals
