#pragma once

#include <span>
#include <vector>

#include "substat/models.hpp"
#include "substat/report.hpp"

namespace substat::conformal {

using models::ProfileTriple;

// Signed optical distance along the radial direction: int_{r0}^{r} ds/f(s)^2.
double rho_radial(const ProfileTriple& triple, double r0, double r, double rel_tol = 1e-11);

// Initial value of the reparametrized distance from the coordinate sphere r0:
// eta(0) = (n-1) f/H = b/b'. Throws NotMeanConvex when b'(r0) <= 0.
double eta_initial_sphere(const ProfileTriple& triple, double r0);

// Reparametrized distance at r for the flow started on the sphere r0; solves
// d eta / d rho = f^2, which reduces to eta(r) = r - r0 + b(r0)/b'(r0).
double eta_from_sphere(const ProfileTriple& triple, double r0, double r);

// RK4 integration of the radial flow (r(rho), eta(rho)); the closed form above
// must be reproduced (d/dr (eta - r) = 0).
struct RadialFlowSample {
  double rho, r, eta;
};
std::vector<RadialFlowSample> integrate_radial_flow(const ProfileTriple& triple, double r0,
                                                    double rho_end, double step,
                                                    double eta0 = -1.0);

// Unit-speed geodesic of the optical metric restricted to a totally geodesic
// 2-plane of the cross-section: reduced metric dr^2/f^4 + (b^2/f^2) dphi^2.
struct GeodesicState {
  double r = 0.0;
  double phi = 0.0;
  double p_r = 0.0;
  double p_phi = 0.0;
  double rho = 0.0;
  double eta = 0.0;
};

// alpha = angle from the outward radial direction in the optical orthonormal frame.
GeodesicState initial_geodesic_state(const ProfileTriple& triple, double r0, double phi0,
                                     double alpha, double eta0 = 0.0);

double geodesic_hamiltonian(const ProfileTriple& triple, const GeodesicState& s);

struct Trajectory {
  std::vector<GeodesicState> states;
  bool left_domain = false;
  double hamiltonian_drift = 0.0;  // max |2H - 1| over stored states
};

// Integrates for optical arclength `length` with fixed RK4 steps. Throws
// LeftDomain if the trajectory exits (r_min, r_max) before `length`.
Trajectory geodesic_integrate(const ProfileTriple& triple, const GeodesicState& initial,
                              double length, double step = 1e-3);

struct PlanePoint {
  double r = 0.0;
  double phi = 0.0;
};

// Upper bound on the optical distance by fan shooting plus golden-section
// refinement of the best arrival angle.
double distance_point(const ProfileTriple& triple, PlanePoint p, PlanePoint q, int fan = 32,
                      double step = 1e-3);

// Riccati transport of h = H/f along the radial flow from the sphere r0:
// dh/d rho = -f^2 h^2 / (n-1).
struct RiccatiState {
  double rho = 0.0;
  double h_over_f = 0.0;
  double eta = 0.0;
};

enum class RiccatiEvent { none, stays_nonpositive, blow_up };

struct RiccatiResult {
  std::vector<RiccatiState> states;
  RiccatiEvent event = RiccatiEvent::none;
  double rho_event = 0.0;  // blow-up location when event == blow_up
};

RiccatiResult riccati_evolve(const ProfileTriple& triple, double r0, double r_end,
                             double h0_over_f0, double step = 1e-3);

// Verifies 0 < H/f <= (n-1)/eta on the grid for the flow from the sphere r0.
CheckReport laplacian_comparison_check(const ProfileTriple& triple, double r0,
                                       std::span<const double> grid, double tol = 1e-10);

}  // namespace substat::conformal
