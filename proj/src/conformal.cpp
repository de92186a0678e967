#include "substat/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "substat/curvature.hpp"
#include "substat/errors.hpp"
#include "substat/quadrature.hpp"

namespace substat::conformal {

double rho_radial(const ProfileTriple& t, double r0, double r, double rel_tol) {
  t.check_domain(r0);
  t.check_domain(r);
  if (t.has_horizon && r0 <= t.r_min)
    fail(ErrorCode::HorizonDivergence, "rho to the horizon is infinite");
  if (r0 == r) return 0.0;
  const auto inv_f2 = [&](double s) {
    const double f = t.f->value(s);
    return 1.0 / (f * f);
  };
  return quad::integrate(inv_f2, r0, r, rel_tol, 1e-300);
}

double eta_initial_sphere(const ProfileTriple& t, double r0) {
  const auto bv = t.eval_b(r0);
  if (!(bv[1] > 0))
    fail(ErrorCode::NotMeanConvex, "coordinate sphere at r0 = " + std::to_string(r0) +
                                       " has b' <= 0 (H <= 0)");
  return bv[0] / bv[1];
}

double eta_from_sphere(const ProfileTriple& t, double r0, double r) {
  t.check_domain(r);
  return r - r0 + eta_initial_sphere(t, r0);
}

std::vector<RadialFlowSample> integrate_radial_flow(const ProfileTriple& t, double r0,
                                                    double rho_end, double step, double eta0) {
  if (eta0 < 0) eta0 = eta_initial_sphere(t, r0);
  // state y = (r, eta), dy/drho = (f^2, f^2)
  const auto deriv = [&](double r, double& dr) {
    const double f = t.f->value(r);
    dr = f * f;
  };
  std::vector<RadialFlowSample> out;
  double r = r0, eta = eta0, rho = 0.0;
  out.push_back({rho, r, eta});
  const int nsteps = static_cast<int>(std::ceil(rho_end / step));
  for (int i = 0; i < nsteps; ++i) {
    const double h = std::min(step, rho_end - rho);
    double k1, k2, k3, k4;
    deriv(r, k1);
    deriv(r + 0.5 * h * k1, k2);
    deriv(r + 0.5 * h * k2, k3);
    deriv(r + h * k3, k4);
    const double dr = h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    r += dr;
    eta += dr;  // same right-hand side
    rho += h;
    if (r >= t.r_max) fail(ErrorCode::LeftDomain, "radial flow reached r_max");
    out.push_back({rho, r, eta});
  }
  return out;
}

namespace {

struct ReducedMetric {
  // A(r) = f^4 (inverse metric for p_r), B(r) = f^2/b^2 (inverse for p_phi)
  const ProfileTriple* t;
  void coef(double r, double& A, double& Ap, double& B, double& Bp) const {
    double f, fp, fpp, b, bp, bpp;
    t->f->eval(r, f, fp, fpp);
    t->b->eval(r, b, bp, bpp);
    A = f * f * f * f;
    Ap = 4 * f * f * f * fp;
    B = f * f / (b * b);
    Bp = 2 * f * fp / (b * b) - 2 * f * f * bp / (b * b * b);
  }
};

struct Deriv {
  double dr, dphi, dpr, deta;
};

Deriv rhs(const ReducedMetric& m, const GeodesicState& s) {
  double A, Ap, B, Bp;
  m.coef(s.r, A, Ap, B, Bp);
  Deriv d;
  d.dr = A * s.p_r;
  d.dphi = B * s.p_phi;
  d.dpr = -0.5 * (Ap * s.p_r * s.p_r + Bp * s.p_phi * s.p_phi);
  d.deta = std::sqrt(A);  // f^2
  return d;
}

}  // namespace

GeodesicState initial_geodesic_state(const ProfileTriple& t, double r0, double phi0, double alpha,
                                     double eta0) {
  t.check_domain(r0);
  const double f = t.f->value(r0);
  const double b = t.b->value(r0);
  GeodesicState s;
  s.r = r0;
  s.phi = phi0;
  s.p_r = std::cos(alpha) / (f * f);
  s.p_phi = b * std::sin(alpha) / f;
  s.rho = 0.0;
  s.eta = eta0;
  return s;
}

double geodesic_hamiltonian(const ProfileTriple& t, const GeodesicState& s) {
  double f, fp, fpp, b, bp, bpp;
  t.f->eval(s.r, f, fp, fpp);
  t.b->eval(s.r, b, bp, bpp);
  return 0.5 * (std::pow(f, 4) * s.p_r * s.p_r + f * f / (b * b) * s.p_phi * s.p_phi);
}

namespace {

bool rk4_step(const ReducedMetric& m, GeodesicState& s, double h) {
  const ProfileTriple& t = *m.t;
  auto inside = [&](double r) { return r > t.r_min && r < t.r_max; };
  const Deriv k1 = rhs(m, s);
  GeodesicState s2 = s;
  s2.r = s.r + 0.5 * h * k1.dr;
  s2.p_r = s.p_r + 0.5 * h * k1.dpr;
  if (!inside(s2.r)) return false;
  const Deriv k2 = rhs(m, s2);
  GeodesicState s3 = s;
  s3.r = s.r + 0.5 * h * k2.dr;
  s3.p_r = s.p_r + 0.5 * h * k2.dpr;
  if (!inside(s3.r)) return false;
  const Deriv k3 = rhs(m, s3);
  GeodesicState s4 = s;
  s4.r = s.r + h * k3.dr;
  s4.p_r = s.p_r + h * k3.dpr;
  if (!inside(s4.r)) return false;
  const Deriv k4 = rhs(m, s4);
  s.r += h / 6.0 * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr);
  s.phi += h / 6.0 * (k1.dphi + 2 * k2.dphi + 2 * k3.dphi + k4.dphi);
  s.p_r += h / 6.0 * (k1.dpr + 2 * k2.dpr + 2 * k3.dpr + k4.dpr);
  s.eta += h / 6.0 * (k1.deta + 2 * k2.deta + 2 * k3.deta + k4.deta);
  s.rho += h;
  return inside(s.r);
}

}  // namespace

Trajectory geodesic_integrate(const ProfileTriple& t, const GeodesicState& initial, double length,
                              double step) {
  ReducedMetric m{&t};
  Trajectory traj;
  GeodesicState s = initial;
  traj.states.push_back(s);
  const double H0 = geodesic_hamiltonian(t, s);
  double rho = 0.0;
  while (rho < length) {
    const double h = std::min(step, length - rho);
    if (!rk4_step(m, s, h)) {
      traj.left_domain = true;
      fail(ErrorCode::LeftDomain,
           "geodesic reached the domain boundary at rho = " + std::to_string(rho));
    }
    rho += h;
    traj.states.push_back(s);
    traj.hamiltonian_drift =
        std::max(traj.hamiltonian_drift, std::fabs(geodesic_hamiltonian(t, s) - H0));
  }
  return traj;
}

double distance_point(const ProfileTriple& t, PlanePoint p, PlanePoint q, int fan, double step) {
  t.check_domain(p.r);
  t.check_domain(q.r);
  if (fan < 4) fail(ErrorCode::ConfigError, "fan must be >= 4");
  if (p.r == q.r && p.phi == q.phi) return 0.0;

  // Each ray yields candidate arrivals where it crosses the circle {r = q.r};
  // closing the path with an exact circular arc (optical length |dphi| b/f at
  // q.r) gives a genuine upper bound that the angle refinement drives down.
  const double fq = t.f->value(q.r);
  const double bq = t.b->value(q.r);
  const double arc_rate = bq / fq;

  const double rho_leg = std::fabs(rho_radial(t, p.r, q.r));
  const double arc0 = std::fabs(std::remainder(q.phi - p.phi, 2.0 * M_PI)) * arc_rate;
  const double cap = 2.0 * (rho_leg + arc0) + 1.0;

  ReducedMetric m{&t};
  // cubic Hermite value on [0, h] from endpoint values and slopes
  const auto hermite = [](double h, double y0, double m0, double y1, double m1, double sig) {
    const double u = sig / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * m1;
  };
  const auto shoot = [&](double alpha) -> double {
    GeodesicState s = initial_geodesic_state(t, p.r, p.phi, alpha);
    double best = std::numeric_limits<double>::infinity();
    double rho = 0.0;
    GeodesicState prev = s;
    Deriv dprev = rhs(m, prev);
    while (rho < cap) {
      if (!rk4_step(m, s, step)) break;
      rho += step;
      const Deriv dcur = rhs(m, s);
      const bool crossed = (prev.r - q.r) * (s.r - q.r) <= 0.0 && prev.r != s.r;
      if (crossed) {
        // solve r(sigma) = q.r on the step by bisection on the Hermite model
        double lo = 0.0, hi = step;
        const double sign_lo = prev.r - q.r;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double rm = hermite(step, prev.r, dprev.dr, s.r, dcur.dr, mid) - q.r;
          if ((rm > 0) == (sign_lo > 0))
            lo = mid;
          else
            hi = mid;
        }
        const double sig = 0.5 * (lo + hi);
        const double rho_c = rho - step + sig;
        const double phi_c = hermite(step, prev.phi, dprev.dphi, s.phi, dcur.dphi, sig);
        const double arc = std::fabs(std::remainder(phi_c - q.phi, 2.0 * M_PI)) * arc_rate;
        best = std::min(best, rho_c + arc);
      }
      prev = s;
      dprev = dcur;
    }
    return best;
  };

  double best_alpha = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fan; ++i) {
    const double alpha = -M_PI + 2.0 * M_PI * (i + 0.5) / fan;
    const double d = shoot(alpha);
    if (d < best) {
      best = d;
      best_alpha = alpha;
    }
  }
  if (!std::isfinite(best)) fail(ErrorCode::NoArrival, "no ray reached the target radius");

  // golden-section refinement around the best fan angle
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_alpha - 2.0 * M_PI / fan;
  double b = best_alpha + 2.0 * M_PI / fan;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = shoot(x1), f2 = shoot(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-11; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = shoot(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = shoot(x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

RiccatiResult riccati_evolve(const ProfileTriple& t, double r0, double r_end, double h0_over_f0,
                             double step) {
  if (!std::isfinite(h0_over_f0)) fail(ErrorCode::ConfigError, "initial h must be finite");
  t.check_domain(r0);
  t.check_domain(r_end);

  RiccatiResult out;
  const int n = t.n;
  // state y = (r, h, eta): dr/drho = f^2, dh/drho = -f^2 h^2/(n-1), deta = f^2
  double r = r0, h = h0_over_f0, rho = 0.0;
  double eta = (h0_over_f0 != 0.0) ? (n - 1) / h0_over_f0 : 0.0;
  out.states.push_back({rho, h, eta});
  const double kBlow = 1e8 * std::max(1.0, std::fabs(h0_over_f0));
  const bool started_nonpositive = h0_over_f0 <= 0.0;

  auto deriv = [&](double rr, double hh, double& dr, double& dh) {
    const double f = t.f->value(rr);
    dr = f * f;
    dh = -f * f * hh * hh / (n - 1);
  };

  while (r < r_end) {
    double k1r, k1h, k2r, k2h, k3r, k3h, k4r, k4h;
    deriv(r, h, k1r, k1h);
    deriv(r + 0.5 * step * k1r, h + 0.5 * step * k1h, k2r, k2h);
    deriv(r + 0.5 * step * k2r, h + 0.5 * step * k2h, k3r, k3h);
    deriv(r + step * k3r, h + step * k3h, k4r, k4h);
    const double dr = step / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
    const double dh = step / 6.0 * (k1h + 2 * k2h + 2 * k3h + k4h);
    if (!std::isfinite(dh) || h + dh < -kBlow) {
      out.event = RiccatiEvent::blow_up;
      out.rho_event = rho;
      return out;
    }
    r += dr;
    h += dh;
    eta += dr;
    rho += step;
    out.states.push_back({rho, h, eta});
    if (r >= t.r_max) break;
  }
  if (started_nonpositive && out.event == RiccatiEvent::none) {
    bool nonpositive = true;
    for (const auto& s : out.states) nonpositive = nonpositive && s.h_over_f <= 1e-14;
    if (nonpositive) out.event = RiccatiEvent::stays_nonpositive;
  }
  return out;
}

CheckReport laplacian_comparison_check(const ProfileTriple& t, double r0,
                                       std::span<const double> grid, double tol) {
  // prerequisite: substatic on the grid
  const CheckReport sub = curvature::check_substatic(t, grid, 1e-9);
  if (!sub.passed)
    fail(ErrorCode::PrerequisiteFailed, "laplacian comparison requires check_substatic to pass");
  const double eta0 = eta_initial_sphere(t, r0);  // throws NotMeanConvex

  double min_margin = std::numeric_limits<double>::infinity();
  double min_hf = std::numeric_limits<double>::infinity();
  double argmin = r0;
  const int n = t.n;
  for (double r : grid) {
    if (r < r0) continue;
    const double hf = t.sphere_mean_curvature(r) / t.f->value(r);  // (n-1) b'/b
    const double eta = r - r0 + eta0;
    const double margin = (n - 1) / eta - hf;
    min_hf = std::min(min_hf, hf);
    if (margin < min_margin) {
      min_margin = margin;
      argmin = r;
    }
  }
  std::ostringstream ctx;
  ctx << "H/f <= (n-1)/eta from sphere r0 = " << r0 << "; tightest at r = " << argmin
      << "; min H/f = " << min_hf;
  // binding slack of the two-sided statement 0 < H/f <= (n-1)/eta
  return make_report("laplacian-comparison", min_margin, 0.0, std::min(min_margin, min_hf), tol,
                     1e-8, ctx.str());
}

}  // namespace substat::conformal
