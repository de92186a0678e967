#pragma once

#include <span>

#include "substat/models.hpp"
#include "substat/report.hpp"

namespace substat::curvature {

using models::ProfileTriple;

// Symmetric 2-tensor diagonal in the orthonormal frame {e_r = f d_r, e_a}:
// eigenvalues are rad_rad (x1) and tan_tan (x n-1).
struct FrameTensor2 {
  double rad_rad = 0.0;
  double tan_tan = 0.0;
};

// Ricci tensor of g = dr^2/f^2 + b^2 g_Sigma in the orthonormal frame.
FrameTensor2 ricci(const ProfileTriple& triple, double r);

// Hessian of the radial scalar u in the orthonormal frame.
FrameTensor2 hessian_radial(const ProfileTriple& triple, double r, double du, double ddu);

double scalar_curvature(const ProfileTriple& triple, double r);

// Q = f Ric - Hess f + (Lap f) g.
FrameTensor2 substatic_tensor(const ProfileTriple& triple, double r);

// Independent curvature oracle: central-difference Christoffel symbols of the
// full n-dimensional metric in coordinates (r, theta^1..theta^{n-1}), with
// (h, h/2) Richardson extrapolation. Round or Einstein-scaled-sphere sections.
FrameTensor2 fd_curvature_oracle(const ProfileTriple& triple, double r);
FrameTensor2 fd_substatic_oracle(const ProfileTriple& triple, double r);
bool fd_oracle_applicable(const ProfileTriple& triple, double r);

CheckReport check_substatic(const ProfileTriple& triple, std::span<const double> grid,
                            double tol = 1e-9);

// Triple carrying the optical metric g~ = g/f^2: same warped class with
// radial factor f^2 and warp b/f.
ProfileTriple conformal_triple(const ProfileTriple& triple);

enum class CurvaturePath { closed_form, finite_difference };

// Both sides of Ric - Hess f / f + (Lap f / f) g = Ric~ + Hess~ psi
// + d psi (x) d psi / (n-1), psi = -(n-1) log f, compared in the g-frame.
CheckReport cd01_identity_check(const ProfileTriple& triple, double r,
                                CurvaturePath path = CurvaturePath::closed_form,
                                double tol = 1e-10);

// Ricci tensor of the Li-Xia connection D^{u,alpha,gamma} with u = log f.
FrameTensor2 lixia_ricci(const ProfileTriple& triple, double r, double alpha, double gamma);

// Frame components of the stress-energy tensor of the static spacetime
// -f^2 dt^2 + g with cosmological constant lambda.
struct StressEnergy {
  double T_tt = 0.0;
  double T_rad = 0.0;
  double T_tan = 0.0;
  double lambda = 0.0;
};

StressEnergy stress_energy(const ProfileTriple& triple, double r, double lambda);

// Null energy condition by sampling X = d_t + Y, g(Y,Y) = f^2, over the
// radial/tangential angle (low-discrepancy, plus the exact extremes) on a
// radial grid; also reports sign-equivalence with the substatic tensor.
CheckReport nec_check(const ProfileTriple& triple, double lambda, int samples,
                      std::span<const double> grid, double tol = 1e-10);
CheckReport nec_check(const ProfileTriple& triple, double lambda, int samples = 1000);

}  // namespace substat::curvature
