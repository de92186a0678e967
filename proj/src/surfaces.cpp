#include "substat/surfaces.hpp"

#include <cmath>
#include <sstream>

#include "substat/errors.hpp"
#include "substat/quadrature.hpp"

namespace substat::surfaces {

RadialGraphSurface RadialGraphSurface::sphere(double r, int nodes) {
  RadialGraphSurface s;
  s.cos_coeffs = {r};
  s.nodes = nodes;
  return s;
}

RadialGraphSurface RadialGraphSurface::cosine(std::vector<double> coeffs, int nodes) {
  RadialGraphSurface s;
  s.cos_coeffs = std::move(coeffs);
  s.nodes = nodes;
  return s;
}

void RadialGraphSurface::eval(double theta, double& R, double& Rp, double& Rpp) const {
  R = Rp = Rpp = 0.0;
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j) {
    const double c = cos_coeffs[j];
    R += c * std::cos(j * theta);
    Rp += -c * j * std::sin(j * theta);
    Rpp += -c * j * j * std::cos(j * theta);
  }
}

double RadialGraphSurface::third_deriv(double theta) const {
  double v = 0.0;
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j)
    v += cos_coeffs[j] * j * j * j * std::sin(j * theta);
  return v;
}

double RadialGraphSurface::min_radius() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 512; ++i) {
    double R, Rp, Rpp;
    eval(M_PI * i / 512.0, R, Rp, Rpp);
    m = std::min(m, R);
  }
  return m;
}

double RadialGraphSurface::max_radius() const {
  double m = 0.0;
  for (int i = 0; i <= 512; ++i) {
    double R, Rp, Rpp;
    eval(M_PI * i / 512.0, R, Rp, Rpp);
    m = std::max(m, R);
  }
  return m;
}

namespace {

// Graphs need the polar-angle structure of the round sphere; quotient-like
// sections (einstein_const = 1, scaled total measure) are admitted with a
// measure factor, anything else only gets coordinate spheres.
void require_round(const ProfileTriple& t) {
  if (t.cross_section.kind != "round-sphere" &&
      !(t.cross_section.kind == "einstein" && t.cross_section.einstein_const == 1.0))
    fail(ErrorCode::ConfigError, "graph surfaces need a round-type cross-section");
}

double section_scale(const ProfileTriple& t) {
  return t.cross_section.unit_area / models::unit_sphere_area(t.n - 1);
}

// generic surface profile: R, R' (R'' only where stated)
template <class Prof>
double area_impl(const ProfileTriple& t, const Prof& prof, int nodes) {
  const int n = t.n;
  const auto rule = quad::GaussLegendre::on(0.0, M_PI, nodes);
  const double snm2 = models::unit_sphere_area(n - 2) * section_scale(t);
  return snm2 * rule.sum([&](double th) {
    double R, Rp;
    prof(th, R, Rp);
    const double f = t.f->value(R);
    const double b = t.b->value(R);
    return std::sqrt(b * b + Rp * Rp / (f * f)) * std::pow(b * std::sin(th), n - 2);
  });
}

template <class Prof>
double f_volume_impl(const ProfileTriple& t, const Prof& prof, int nodes) {
  const int n = t.n;
  const auto rule = quad::GaussLegendre::on(0.0, M_PI, nodes);
  const double snm2 = models::unit_sphere_area(n - 2) * section_scale(t);
  return snm2 * rule.sum([&](double th) {
    double R, Rp;
    prof(th, R, Rp);
    const double radial = quad::integrate(
        [&](double r) { return std::pow(t.b->value(r), n - 1); }, t.r_min, R, 1e-12, 1e-300);
    return radial * std::pow(std::sin(th), n - 2);
  });
}

}  // namespace

double area(const ProfileTriple& t, const RadialGraphSurface& s) {
  require_round(t);
  t.check_domain(s.min_radius());
  t.check_domain(s.max_radius());
  return area_impl(
      t,
      [&](double th, double& R, double& Rp) {
        double Rpp;
        s.eval(th, R, Rp, Rpp);
      },
      s.nodes);
}

double f_volume(const ProfileTriple& t, const RadialGraphSurface& s) {
  require_round(t);
  const double rmin_surface = s.min_radius();
  if (t.has_horizon && rmin_surface <= t.r_min * (1.0 + 1e-12))
    fail(ErrorCode::SurfaceBelowHorizon, "graph must stay strictly outside the horizon");
  t.check_domain(rmin_surface);
  t.check_domain(s.max_radius());
  return f_volume_impl(
      t,
      [&](double th, double& R, double& Rp) {
        double Rpp;
        s.eval(th, R, Rp, Rpp);
      },
      s.nodes);
}

double mean_curvature(const ProfileTriple& t, const RadialGraphSurface& s, double theta) {
  require_round(t);
  const int n = t.n;
  double R, Rp, Rpp;
  s.eval(theta, R, Rp, Rpp);
  double f, fp, fpp, b, bp, bpp;
  t.f->eval(R, f, fp, fpp);
  t.b->eval(R, b, bp, bpp);

  const double W2 = f * f + Rp * Rp / (b * b);
  const double W = std::sqrt(W2);
  if (!(W > 0)) fail(ErrorCode::DegenerateTangent, "degenerate tangent at theta");
  const double Wr = (f * fp - Rp * Rp * bp / (b * b * b)) / W;

  // divergence of the unit normal of the level-set foliation u = r - R(theta)
  const double T1 =
      ((n - 1) * std::pow(b, n - 2) * bp * f + std::pow(b, n - 1) * fp) / W -
      std::pow(b, n - 1) * f * Wr / W2;
  double cot_term;
  if (std::sin(theta) > 1e-8) {
    cot_term = (n - 2) * (std::cos(theta) / std::sin(theta)) * Rp;
  } else {
    cot_term = (n - 2) * Rpp;  // R' ~ R''(0) theta at the poles
  }
  const double T2 =
      -(std::pow(b, n - 3) / f) * (cot_term / W + Rpp / W - Rp * Rp * Rpp / (b * b * W2 * W));
  return f / std::pow(b, n - 1) * (T1 + T2);
}

double surface_integral(const ProfileTriple& t, const RadialGraphSurface& s,
                        const std::function<double(double)>& g) {
  require_round(t);
  const int n = t.n;
  const auto rule = quad::GaussLegendre::on(0.0, M_PI, s.nodes);
  const double snm2 = models::unit_sphere_area(n - 2) * section_scale(t);
  return snm2 * rule.sum([&](double th) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    const double f = t.f->value(R);
    const double b = t.b->value(R);
    return g(th) * std::sqrt(b * b + Rp * Rp / (f * f)) * std::pow(b * std::sin(th), n - 2);
  });
}

CheckReport first_variation_oracle(const ProfileTriple& t, const RadialGraphSurface& s,
                                   const std::function<double(double)>& bump, double rel_tol) {
  require_round(t);
  // W(theta) and its theta-derivative along the surface (normal perturbation
  // eps*phi corresponds to delta R = eps * phi * W)
  const auto W_of = [&](double th, double& W, double& Wth) {
    double R, Rp, Rpp;
    s.eval(th, R, Rp, Rpp);
    double f, fp, fpp, b, bp, bpp;
    t.f->eval(R, f, fp, fpp);
    t.b->eval(R, b, bp, bpp);
    W = std::sqrt(f * f + Rp * Rp / (b * b));
    Wth = (f * fp * Rp + Rp * Rpp / (b * b) - Rp * Rp * bp * Rp / (b * b * b)) / W;
  };
  const double dphi_h = 1e-6;
  const auto perturbed = [&](double eps) {
    return [&, eps](double th, double& R, double& Rp) {
      double R0, Rp0, Rpp0, W, Wth;
      s.eval(th, R0, Rp0, Rpp0);
      W_of(th, W, Wth);
      const double phi = bump(th);
      const double dphi = (bump(th + dphi_h) - bump(th - dphi_h)) / (2 * dphi_h);
      R = R0 + eps * phi * W;
      Rp = Rp0 + eps * (dphi * W + phi * Wth);
    };
  };

  const auto variation = [&](double eps, bool of_area) {
    const auto plus = perturbed(eps);
    const auto minus = perturbed(-eps);
    const double vp = of_area ? area_impl(t, plus, s.nodes) : f_volume_impl(t, plus, s.nodes);
    const double vm = of_area ? area_impl(t, minus, s.nodes) : f_volume_impl(t, minus, s.nodes);
    return (vp - vm) / (2 * eps);
  };

  // eps-ladder with Richardson (central differences are O(eps^2))
  const double e1 = 1e-3, e2 = 5e-4;
  const double dA = quad::richardson(variation(e1, true), variation(e2, true), 2);
  const double dV = quad::richardson(variation(e1, false), variation(e2, false), 2);

  const double predicted_dA =
      surface_integral(t, s, [&](double th) { return mean_curvature(t, s, th) * bump(th); });
  const double predicted_dV =
      surface_integral(t, s, [&](double th) {
        double R, Rp, Rpp;
        s.eval(th, R, Rp, Rpp);
        return t.f->value(R) * bump(th);
      });

  const double scale_A = std::max(1.0, std::fabs(predicted_dA));
  const double scale_V = std::max(1.0, std::fabs(predicted_dV));
  const double errA = std::fabs(dA - predicted_dA) / scale_A;
  const double errV = std::fabs(dV - predicted_dV) / scale_V;
  const double err = std::max(errA, errV);

  std::ostringstream ctx;
  ctx << "delta-area: numeric " << dA << " vs int H phi = " << predicted_dA
      << "; delta-f-volume: numeric " << dV << " vs int f phi = " << predicted_dV;
  return make_report("first-variation", err, 0.0, rel_tol - err, 1e-15, 1e-15, ctx.str());
}

}  // namespace substat::surfaces
