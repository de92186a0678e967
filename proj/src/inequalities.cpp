#include "substat/inequalities.hpp"

#include <cmath>
#include <sstream>

#include "substat/errors.hpp"
#include "substat/functionals.hpp"
#include "substat/quadrature.hpp"

namespace substat::ineq {

namespace {

void require_positive_mean_curvature(const ProfileTriple& t, const RadialGraphSurface& s) {
  const auto rule = quad::GaussLegendre::on(0.0, M_PI, std::max(s.nodes, 128));
  for (double th : rule.x) {
    if (!(surfaces::mean_curvature(t, s, th) > 0))
      fail(ErrorCode::NotMeanConvex,
           "surface has H <= 0 at theta = " + std::to_string(th));
  }
}

void require_avr(const AvrInput& avr) {
  if (!avr.certified)
    fail(ErrorCode::AvrUncertified, "inequality checks need a certified AVR input");
}

}  // namespace

double boundary_area(const ProfileTriple& t) {
  if (!t.has_horizon) return 0.0;
  return std::pow(t.b->value(t.r_min), t.n - 1) * t.cross_section.unit_area;
}

AvrInput closed_form_avr(const ProfileTriple& t) {
  // validity probe: b == r on a sample grid
  const double lo = t.has_horizon ? 1.01 * t.r_min : t.r_min + 0.01;
  const double hi = std::isfinite(t.r_max) ? 0.99 * t.r_max : 100.0 * std::max(1.0, lo);
  for (int i = 0; i <= 32; ++i) {
    const double r = lo + (hi - lo) * i / 32.0;
    if (std::fabs(t.b->value(r) - r) > 1e-10 * std::max(1.0, r))
      fail(ErrorCode::ConfigError, "closed-form AVR override needs b(r) = r");
  }
  AvrInput avr;
  avr.value = t.cross_section.unit_area / models::unit_sphere_area(t.n - 1);
  avr.certified = true;
  return avr;
}

AvrInput estimated_avr(const ProfileTriple& t, double r0) {
  const auto est = functionals::avr_estimate(t, functionals::Base::sphere(r0));
  AvrInput avr;
  avr.value = est.value;
  avr.certified = est.certified;
  return avr;
}

CheckReport willmore_check(const ProfileTriple& t, const RadialGraphSurface& s,
                           const AvrInput& avr, double tol, double equality_tol) {
  require_avr(avr);
  require_positive_mean_curvature(t, s);
  const int n = t.n;
  const double lhs = surfaces::surface_integral(t, s, [&](double th) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    const double H = surfaces::mean_curvature(t, s, th);
    const double f = t.f->value(R);
    return std::pow(H / ((n - 1) * f), n - 1);
  });
  const double rhs = avr.value * models::unit_sphere_area(n - 1);
  std::ostringstream ctx;
  ctx << "AVR = " << avr.value;
  CheckReport rep = make_report("willmore", lhs, rhs, lhs - rhs, tol * std::max(1.0, rhs),
                                equality_tol * std::max(1.0, rhs), ctx.str());
  return rep;
}

CheckReport isoperimetric_check(const ProfileTriple& t, const RadialGraphSurface& s,
                                const AvrInput& avr, double tol, double equality_tol) {
  require_avr(avr);
  const int n = t.n;
  const double p = double(n) / (n - 1);
  const double A = surfaces::area(t, s);
  const double vol_f = surfaces::f_volume(t, s);  // throws SurfaceBelowHorizon
  const double dM = boundary_area(t);
  const double lhs = std::pow(A, p) - std::pow(dM, p);
  const double rhs =
      n * std::pow(avr.value * models::unit_sphere_area(n - 1), 1.0 / (n - 1)) * vol_f;
  std::ostringstream ctx;
  ctx << "|Sigma| = " << A << ", |dM| = " << dM << ", |Omega|_f = " << vol_f
      << ", AVR = " << avr.value;
  return make_report("isoperimetric", lhs, rhs, lhs - rhs, tol * std::max(1.0, rhs),
                     equality_tol * std::max(1.0, rhs), ctx.str());
}

CheckReport heintze_karcher_check(const ProfileTriple& t, const RadialGraphSurface& s, double tol,
                                  double equality_tol) {
  require_positive_mean_curvature(t, s);
  const int n = t.n;
  const double lhs = (n - 1.0) / n * surfaces::surface_integral(t, s, [&](double th) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    return t.f->value(R) / surfaces::mean_curvature(t, s, th);
  });
  const double rhs = surfaces::f_volume(t, s);
  std::ostringstream ctx;
  ctx << "((n-1)/n) int f/H = " << lhs << ", |Omega|_f = " << rhs;
  if (t.has_horizon)
    ctx << "; horizon slack r_min |dM| / n = " << t.r_min * boundary_area(t) / n
        << " (equality case is boundaryless)";
  return make_report("heintze-karcher", lhs, rhs, lhs - rhs, tol * std::max(1.0, rhs),
                     equality_tol * std::max(1.0, rhs), ctx.str());
}

CheckReport boundary_minimizing_check(const ProfileTriple& t,
                                      std::span<const RadialGraphSurface> surfs, double tol) {
  if (!t.has_horizon) fail(ErrorCode::ConfigError, "boundary check needs a horizon triple");
  const double dM = boundary_area(t);
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : surfs) min_margin = std::min(min_margin, surfaces::area(t, s) - dM);
  std::ostringstream ctx;
  ctx << "|dM| = " << dM << " over " << surfs.size() << " surfaces";
  return make_report("boundary-minimizing", min_margin + dM, dM, min_margin,
                     tol * std::max(1.0, dM), 1e-8 * std::max(1.0, dM), ctx.str());
}

CheckReport lagrange_multiplier_check(const ProfileTriple& t, const RadialGraphSurface& s,
                                      double tol) {
  require_positive_mean_curvature(t, s);
  // area-weighted mean and standard deviation of H/f over the surface
  const double total = surfaces::surface_integral(t, s, [](double) { return 1.0; });
  const double mean = surfaces::surface_integral(t, s, [&](double th) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    return surfaces::mean_curvature(t, s, th) / t.f->value(R);
  }) / total;
  const double var = surfaces::surface_integral(t, s, [&](double th) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    const double v = surfaces::mean_curvature(t, s, th) / t.f->value(R) - mean;
    return v * v;
  }) / total;
  const double rel_dev = std::sqrt(std::max(0.0, var)) / std::fabs(mean);
  std::ostringstream ctx;
  ctx << "lambda = " << mean << " (must be > 0), stddev/mean = " << rel_dev;
  // margin is the binding slack: the constancy slack when lambda > 0, the
  // (negative) multiplier otherwise
  const double margin = mean > 0 ? tol - rel_dev : mean;
  CheckReport rep = make_report("lagrange-multiplier", rel_dev, 0.0, margin, 1e-15, 1e-15,
                                ctx.str());
  // equality flag == H/f constant within tol (candidate f-isoperimetric surface)
  rep.equality = mean > 0 && rel_dev < tol;
  return rep;
}

CheckReport isoperimetric_profile_check(const ProfileTriple& t, std::span<const double> v_grid,
                                        const AvrInput& avr, double tol) {
  require_avr(avr);
  const int n = t.n;
  const double p = double(n) / (n - 1);
  const double ua = t.cross_section.unit_area;
  const double dM_term = std::pow(boundary_area(t), p);
  const double coef = n * std::pow(avr.value * models::unit_sphere_area(n - 1), 1.0 / (n - 1));

  // invert |Omega|_f(r) = ua * int_{r_min}^{r} b^{n-1} dr for each V
  const auto vol_of_r = [&](double R) {
    return ua * quad::integrate([&](double r) { return std::pow(t.b->value(r), n - 1); }, t.r_min,
                                R, 1e-12, 1e-300);
  };
  double worst = 0.0;
  double worst_v = v_grid.empty() ? 0.0 : v_grid[0];
  for (double V : v_grid) {
    double lo = t.r_min, hi = std::max(2.0 * std::max(t.r_min, 1.0), lo + 1.0);
    while (vol_of_r(hi) < V) {
      hi *= 2.0;
      if (std::isfinite(t.r_max) && hi > t.r_max)
        fail(ErrorCode::OutOfDomain, "V grid exceeds the domain volume");
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
      const double res = vol_of_r(r) - V;
      if (res > 0)
        hi = r;
      else
        lo = r;
      const double d = ua * std::pow(t.b->value(r), n - 1);
      double next = r - res / d;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - r) < 1e-15 * std::max(1.0, r)) {
        r = next;
        break;
      }
      r = next;
    }
    const double If = std::pow(t.b->value(r), n - 1) * ua;
    const double c = std::pow(If, p) - coef * V;
    const double dev = std::fabs(c - dM_term);
    if (dev > worst) {
      worst = dev;
      worst_v = V;
    }
  }
  std::ostringstream ctx;
  ctx << "profile constant target |dM|^{n/(n-1)} = " << dM_term << ", worst deviation at V = "
      << worst_v;
  const double scale = std::max(1.0, dM_term);
  return make_report("isoperimetric-profile", worst, 0.0, tol * scale - worst, 1e-15, 1e-15,
                     ctx.str());
}

}  // namespace substat::ineq
