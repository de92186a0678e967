#pragma once

#include <span>
#include <vector>

#include "substat/models.hpp"
#include "substat/report.hpp"
#include "substat/surfaces.hpp"

namespace substat::ineq {

using models::ProfileTriple;
using surfaces::RadialGraphSurface;

struct AvrInput {
  double value = 1.0;
  bool certified = false;
};

// AVR for models with b = r (verified by sampling): unit_area / |S^{n-1}|.
// Separates extrapolation error from inequality verification.
AvrInput closed_form_avr(const ProfileTriple& triple);
// Extrapolated estimate from `functionals` (certification flag propagated).
AvrInput estimated_avr(const ProfileTriple& triple, double r0);

// int_Sigma [H/((n-1) f)]^{n-1} dsigma >= AVR |S^{n-1}|; equality on
// coordinate spheres of b = r models.
CheckReport willmore_check(const ProfileTriple& triple, const RadialGraphSurface& surface,
                           const AvrInput& avr, double tol = 1e-9, double equality_tol = 1e-8);

// |Sigma|^{n/(n-1)} - |dM|^{n/(n-1)} >= n [AVR |S^{n-1}|]^{1/(n-1)} |Omega|_f.
CheckReport isoperimetric_check(const ProfileTriple& triple, const RadialGraphSurface& surface,
                                const AvrInput& avr, double tol = 1e-9,
                                double equality_tol = 1e-8);

// ((n-1)/n) int f/H dsigma >= |Omega|_f (saturated by coordinate spheres in
// capped models; horizon models carry the positive slack r_min |dM| / n).
CheckReport heintze_karcher_check(const ProfileTriple& triple, const RadialGraphSurface& surface,
                                  double tol = 1e-9, double equality_tol = 1e-8);

CheckReport boundary_minimizing_check(const ProfileTriple& triple,
                                      std::span<const RadialGraphSurface> surfaces,
                                      double tol = 1e-9);

// H/f constancy over the surface; lambda = area-weighted mean, must be > 0.
CheckReport lagrange_multiplier_check(const ProfileTriple& triple,
                                      const RadialGraphSurface& surface, double tol = 1e-8);

// I_f^{n/(n-1)}(V) - n [AVR |S^{n-1}|]^{1/(n-1)} V constant = |dM|^{n/(n-1)}
// across the V grid, with I_f built from coordinate spheres.
CheckReport isoperimetric_profile_check(const ProfileTriple& triple,
                                        std::span<const double> v_grid, const AvrInput& avr,
                                        double tol = 1e-8);

double boundary_area(const ProfileTriple& triple);

}  // namespace substat::ineq
