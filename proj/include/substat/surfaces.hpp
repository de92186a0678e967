#pragma once

#include <functional>
#include <vector>

#include "substat/models.hpp"
#include "substat/report.hpp"

namespace substat::surfaces {

using models::ProfileTriple;

// Axisymmetric radial graph r = R(theta) over the polar angle of a round
// cross-section, R(theta) = sum_j c_j cos(j theta). The cosine basis enforces
// R'(0) = R'(pi) = 0 (pole regularity).
struct RadialGraphSurface {
  std::vector<double> cos_coeffs;
  int nodes = 64;  // Gauss-Legendre nodes in theta

  static RadialGraphSurface sphere(double r, int nodes = 64);
  static RadialGraphSurface cosine(std::vector<double> coeffs, int nodes = 64);

  void eval(double theta, double& R, double& Rp, double& Rpp) const;
  double third_deriv(double theta) const;
  double min_radius() const;
  double max_radius() const;
};

// Requires a round cross-section and R inside the triple's domain.
double area(const ProfileTriple& triple, const RadialGraphSurface& surface);

// int_Omega f dmu between {r = r_min} and the graph; f dmu = b^{n-1} dr dsigma
// is horizon-regular. Throws SurfaceBelowHorizon when the graph dips to r_min.
double f_volume(const ProfileTriple& triple, const RadialGraphSurface& surface);

// Mean curvature of the graph w.r.t. the outward normal (closed-form graph
// formula; certified by first_variation_oracle).
double mean_curvature(const ProfileTriple& triple, const RadialGraphSurface& surface,
                      double theta);

// Numerically verifies delta Area = int H phi dsigma and delta(f-volume) =
// int f phi dsigma for the normal perturbation eps * phi, over a two-step
// eps ladder with Richardson extrapolation.
CheckReport first_variation_oracle(const ProfileTriple& triple, const RadialGraphSurface& surface,
                                   const std::function<double(double)>& bump,
                                   double rel_tol = 1e-6);

// Integral of `g(theta) dsigma` over the surface (carries the full area measure).
double surface_integral(const ProfileTriple& triple, const RadialGraphSurface& surface,
                        const std::function<double(double)>& g);

}  // namespace substat::surfaces
