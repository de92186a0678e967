#include "substat/curvature.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "substat/errors.hpp"

namespace substat::curvature {

namespace {

struct ProfileVals {
  double f, fp, fpp;
  double b, bp, bpp;
};

ProfileVals vals(const ProfileTriple& t, double r) {
  ProfileVals v;
  t.check_domain(r);
  t.f->eval(r, v.f, v.fp, v.fpp);
  t.b->eval(r, v.b, v.bp, v.bpp);
  if (!(v.f > 0)) fail(ErrorCode::OutOfDomain, "curvature evaluation needs f(r) > 0");
  return v;
}

}  // namespace

FrameTensor2 ricci(const ProfileTriple& t, double r) {
  const ProfileVals v = vals(t, r);
  const int n = t.n;
  const double lam = t.cross_section.einstein_const;
  // warped product with arclength ds = dr/f: phi' = f b', phi'' = f (f b')'
  const double mix = v.fp * v.bp + v.f * v.bpp;  // (f b')' with d/dr
  FrameTensor2 out;
  out.rad_rad = -(n - 1) * v.f * mix / v.b;
  out.tan_tan = (n - 2) * (lam - v.f * v.f * v.bp * v.bp) / (v.b * v.b) - v.f * mix / v.b;
  return out;
}

FrameTensor2 hessian_radial(const ProfileTriple& t, double r, double du, double ddu) {
  const ProfileVals v = vals(t, r);
  FrameTensor2 out;
  out.rad_rad = v.f * (v.fp * du + v.f * ddu);
  out.tan_tan = v.f * v.f * du * v.bp / v.b;
  return out;
}

double scalar_curvature(const ProfileTriple& t, double r) {
  const FrameTensor2 ric = ricci(t, r);
  return ric.rad_rad + (t.n - 1) * ric.tan_tan;
}

FrameTensor2 substatic_tensor(const ProfileTriple& t, double r) {
  const ProfileVals v = vals(t, r);
  const FrameTensor2 ric = ricci(t, r);
  const FrameTensor2 hess = hessian_radial(t, r, v.fp, v.fpp);
  const double lap = hess.rad_rad + (t.n - 1) * hess.tan_tan;
  FrameTensor2 out;
  out.rad_rad = v.f * ric.rad_rad - hess.rad_rad + lap;
  out.tan_tan = v.f * ric.tan_tan - hess.tan_tan + lap;
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle. Works on the raw metric component functions in
// long double so nested difference quotients stay well below the tolerances.
// ---------------------------------------------------------------------------

namespace {

using ld = long double;
constexpr int kMaxDim = 8;

struct FdMetric {
  int n;
  ld lam;  // cross-section Einstein constant; section metric is (1/lam) x round
  std::function<ld(ld)> F;  // g_rr = 1/F^2
  std::function<ld(ld)> B;  // warp

  // diagonal metric in coordinates (r, th1, ..., th_{n-1})
  void metric(const ld* x, ld G[kMaxDim][kMaxDim]) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G[i][j] = 0.0L;
    const ld Fr = F(x[0]);
    G[0][0] = 1.0L / (Fr * Fr);
    const ld B2 = B(x[0]) * B(x[0]) / lam;
    ld s2 = 1.0L;
    for (int i = 1; i < n; ++i) {
      G[i][i] = B2 * s2;
      const ld s = std::sin(x[i]);
      s2 *= s * s;
    }
  }
};

void invert(const ld G[kMaxDim][kMaxDim], int n, ld Ginv[kMaxDim][kMaxDim]) {
  // Gauss-Jordan; metric is near-diagonal but keep it generic.
  ld a[kMaxDim][2 * kMaxDim];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = G[i][j];
      a[i][n + j] = (i == j) ? 1.0L : 0.0L;
    }
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r2 = c + 1; r2 < n; ++r2)
      if (std::fabs((double)a[r2][c]) > std::fabs((double)a[p][c])) p = r2;
    for (int j = 0; j < 2 * n; ++j) std::swap(a[c][j], a[p][j]);
    const ld piv = a[c][c];
    for (int j = 0; j < 2 * n; ++j) a[c][j] /= piv;
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == c) continue;
      const ld m = a[r2][c];
      for (int j = 0; j < 2 * n; ++j) a[r2][j] -= m * a[c][j];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ginv[i][j] = a[i][n + j];
}

struct Christoffels {
  ld g[kMaxDim][kMaxDim][kMaxDim];  // Gamma^k_ij
};

void christoffel(const FdMetric& m, const ld* x, ld h_scale, Christoffels& out) {
  const int n = m.n;
  ld G[kMaxDim][kMaxDim], Gp[kMaxDim][kMaxDim], Gm[kMaxDim][kMaxDim], Ginv[kMaxDim][kMaxDim];
  ld dG[kMaxDim][kMaxDim][kMaxDim];  // dG[l][i][j] = d_l G_ij
  m.metric(x, G);
  invert(G, n, Ginv);
  ld xp[kMaxDim];
  for (int l = 0; l < n; ++l) {
    const ld h = h_scale * std::max<ld>(1.0L, std::fabs((double)x[l]));
    for (int i = 0; i < n; ++i) xp[i] = x[i];
    xp[l] = x[l] + h;
    m.metric(xp, Gp);
    xp[l] = x[l] - h;
    m.metric(xp, Gm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dG[l][i][j] = (Gp[i][j] - Gm[i][j]) / (2.0L * h);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ld s = 0.0L;
        for (int l = 0; l < n; ++l) s += Ginv[k][l] * (dG[i][l][j] + dG[j][i][l] - dG[l][i][j]);
        out.g[k][i][j] = 0.5L * s;
      }
}

// Ricci at x with a single step h (no extrapolation).
void ricci_fd_raw(const FdMetric& m, const ld* x, ld h_scale, ld R[kMaxDim][kMaxDim]) {
  const int n = m.n;
  Christoffels c0, cp, cm;
  christoffel(m, x, h_scale, c0);
  ld dG[kMaxDim][kMaxDim][kMaxDim][kMaxDim];  // dG[l][k][i][j] = d_l Gamma^k_ij
  ld xp[kMaxDim];
  for (int l = 0; l < n; ++l) {
    const ld h = h_scale * std::max<ld>(1.0L, std::fabs((double)x[l]));
    for (int i = 0; i < n; ++i) xp[i] = x[i];
    xp[l] = x[l] + h;
    christoffel(m, xp, h_scale, cp);
    xp[l] = x[l] - h;
    christoffel(m, xp, h_scale, cm);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dG[l][k][i][j] = (cp.g[k][i][j] - cm.g[k][i][j]) / (2.0L * h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ld s = 0.0L;
      for (int k = 0; k < n; ++k) {
        s += dG[k][k][i][j] - dG[j][k][i][k];
        for (int l = 0; l < n; ++l)
          s += c0.g[k][k][l] * c0.g[l][i][j] - c0.g[k][j][l] * c0.g[l][i][k];
      }
      R[i][j] = s;
    }
}

FdMetric fd_metric_of(const ProfileTriple& t, bool conformal) {
  FdMetric m;
  m.n = t.n;
  m.lam = t.cross_section.einstein_const;
  const models::ScalarProfile* f = t.f.get();
  const models::ScalarProfile* b = t.b.get();
  if (!conformal) {
    m.F = [f](ld r) { return f->value_ld(r); };
    m.B = [b](ld r) { return b->value_ld(r); };
  } else {
    m.F = [f](ld r) {
      const ld v = f->value_ld(r);
      return v * v;
    };
    m.B = [f, b](ld r) { return b->value_ld(r) / f->value_ld(r); };
  }
  return m;
}

struct FdFrame {
  FrameTensor2 t;
  ld off_diag;  // largest |R_0i| in frame, sanity only
};

FdFrame fd_ricci_frame(const FdMetric& m, double r, ld h_scale) {
  const int n = m.n;
  if (n > kMaxDim) fail(ErrorCode::ConfigError, "fd oracle supports n <= 8");
  ld x[kMaxDim];
  x[0] = r;
  for (int i = 1; i < n; ++i) x[i] = M_PI / 2;  // equatorial point
  if (x[0] + h_scale * std::max<ld>(1.0L, x[0]) == x[0])
    fail(ErrorCode::StepUnderflow, "fd step underflow at r = " + std::to_string(r));

  ld Rh[kMaxDim][kMaxDim], Rh2[kMaxDim][kMaxDim];
  ricci_fd_raw(m, x, h_scale, Rh);
  ricci_fd_raw(m, x, h_scale / 2.0L, Rh2);

  const ld Fr = m.F(r);
  const ld B2 = m.B(r) * m.B(r) / m.lam;
  FdFrame out;
  const ld rad = (4.0L * Rh2[0][0] - Rh[0][0]) / 3.0L * Fr * Fr;
  const ld tan = (4.0L * Rh2[1][1] - Rh[1][1]) / 3.0L / B2;
  out.t.rad_rad = static_cast<double>(rad);
  out.t.tan_tan = static_cast<double>(tan);
  ld off = 0.0L;
  for (int i = 1; i < n; ++i) {
    const ld v = (4.0L * Rh2[0][i] - Rh[0][i]) / 3.0L * Fr / std::sqrt(B2);
    off = std::max(off, std::fabs((double)v) + 0.0L);
  }
  out.off_diag = off;
  return out;
}

// Frame Hessian of a radial scalar u(r) by finite differences:
// Hess u_ij = d_i d_j u - Gamma^k_ij d_k u.
FrameTensor2 fd_hessian_frame(const FdMetric& m, const std::function<ld(ld)>& u, double r,
                              ld h_scale) {
  const int n = m.n;
  ld x[kMaxDim];
  x[0] = r;
  for (int i = 1; i < n; ++i) x[i] = M_PI / 2;

  auto eval_at = [&](ld hs) -> std::pair<ld, ld> {
    Christoffels c;
    christoffel(m, x, hs, c);
    const ld h = hs * std::max<ld>(1.0L, std::fabs((double)x[0]));
    const ld du = (u(x[0] + h) - u(x[0] - h)) / (2.0L * h);
    const ld ddu = (u(x[0] + h) - 2.0L * u(x[0]) + u(x[0] - h)) / (h * h);
    const ld hess_rr = ddu - c.g[0][0][0] * du;
    const ld hess_11 = -c.g[0][1][1] * du;
    const ld Fr = m.F(x[0]);
    const ld B2 = m.B(x[0]) * m.B(x[0]) / m.lam;
    return {hess_rr * Fr * Fr, hess_11 / B2};
  };
  const auto [r1, t1] = eval_at(h_scale);
  const auto [r2, t2] = eval_at(h_scale / 2.0L);
  FrameTensor2 out;
  out.rad_rad = static_cast<double>((4.0L * r2 - r1) / 3.0L);
  out.tan_tan = static_cast<double>((4.0L * t2 - t1) / 3.0L);
  return out;
}

constexpr ld kFdStep = 1e-4L;

}  // namespace

bool fd_oracle_applicable(const ProfileTriple& t, double r) {
  if (!(r > t.r_min && r < t.r_max)) return false;
  if (t.has_horizon && r - t.r_min < 0.05 * t.r_min) return false;
  const double margin = r * 2e-4;
  return r - margin > t.r_min && (!std::isfinite(t.r_max) || r + margin < t.r_max);
}

FrameTensor2 fd_curvature_oracle(const ProfileTriple& t, double r) {
  if (!fd_oracle_applicable(t, r))
    fail(ErrorCode::HorizonEvaluation,
         "fd oracle not applicable at r = " + std::to_string(r) + " (too close to the boundary)");
  return fd_ricci_frame(fd_metric_of(t, false), r, kFdStep).t;
}

FrameTensor2 fd_substatic_oracle(const ProfileTriple& t, double r) {
  if (!fd_oracle_applicable(t, r))
    fail(ErrorCode::HorizonEvaluation,
         "fd oracle not applicable at r = " + std::to_string(r) + " (too close to the boundary)");
  const FdMetric m = fd_metric_of(t, false);
  const FrameTensor2 ric = fd_ricci_frame(m, r, kFdStep).t;
  const models::ScalarProfile* f = t.f.get();
  const FrameTensor2 hess =
      fd_hessian_frame(m, [f](ld x) { return f->value_ld(x); }, r, kFdStep);
  const double fv = t.f->value(r);
  const double lap = hess.rad_rad + (t.n - 1) * hess.tan_tan;
  FrameTensor2 out;
  out.rad_rad = fv * ric.rad_rad - hess.rad_rad + lap;
  out.tan_tan = fv * ric.tan_tan - hess.tan_tan + lap;
  return out;
}

CheckReport check_substatic(const ProfileTriple& t, std::span<const double> grid, double tol) {
  double min_eig = std::numeric_limits<double>::infinity();
  double argmin = grid.empty() ? t.r_min : grid[0];
  for (double r : grid) {
    const FrameTensor2 q = substatic_tensor(t, r);
    const double e = std::min(q.rad_rad, q.tan_tan);
    if (e < min_eig) {
      min_eig = e;
      argmin = r;
    }
  }
  std::ostringstream ctx;
  ctx << "min eigenvalue of Q over " << grid.size() << " radii, attained at r = " << argmin;
  return make_report("substatic", min_eig, 0.0, min_eig, tol, 1e-8, ctx.str());
}

ProfileTriple conformal_triple(const ProfileTriple& t) {
  ProfileTriple c = t;
  const models::ProfilePtr f = t.f;
  const models::ProfilePtr b = t.b;
  struct ConformalF final : models::ScalarProfile {
    models::ProfilePtr f;
    explicit ConformalF(models::ProfilePtr fp) : f(std::move(fp)) {}
    void eval(double r, double& v, double& dv, double& ddv) const override {
      double fv, fp, fpp;
      f->eval(r, fv, fp, fpp);
      v = fv * fv;
      dv = 2 * fv * fp;
      ddv = 2 * fp * fp + 2 * fv * fpp;
    }
    long double value_ld(long double r) const override {
      const long double v = f->value_ld(r);
      return v * v;
    }
  };
  struct ConformalB final : models::ScalarProfile {
    models::ProfilePtr f, b;
    ConformalB(models::ProfilePtr fp, models::ProfilePtr bp) : f(std::move(fp)), b(std::move(bp)) {}
    void eval(double r, double& v, double& dv, double& ddv) const override {
      double fv, fp, fpp, bv, bp, bpp;
      f->eval(r, fv, fp, fpp);
      b->eval(r, bv, bp, bpp);
      v = bv / fv;
      dv = bp / fv - bv * fp / (fv * fv);
      ddv = bpp / fv - 2 * bp * fp / (fv * fv) - bv * fpp / (fv * fv) +
            2 * bv * fp * fp / (fv * fv * fv);
    }
    long double value_ld(long double r) const override { return b->value_ld(r) / f->value_ld(r); }
  };
  c.f = std::make_shared<ConformalF>(f);
  c.b = std::make_shared<ConformalB>(f, b);
  return c;
}

CheckReport cd01_identity_check(const ProfileTriple& t, double r, CurvaturePath path, double tol) {
  const ProfileVals v = vals(t, r);
  const int n = t.n;
  const double psi_p = -(n - 1) * v.fp / v.f;
  const double psi_pp = -(n - 1) * (v.fpp / v.f - v.fp * v.fp / (v.f * v.f));
  const ProfileTriple conf = conformal_triple(t);

  FrameTensor2 lhs, rhs;
  if (path == CurvaturePath::closed_form) {
    const FrameTensor2 q = substatic_tensor(t, r);
    lhs.rad_rad = q.rad_rad / v.f;
    lhs.tan_tan = q.tan_tan / v.f;
    const FrameTensor2 ric_c = ricci(conf, r);
    const FrameTensor2 hess_c = hessian_radial(conf, r, psi_p, psi_pp);
    const double F = v.f * v.f;
    const double dpsi2 = (F * psi_p) * (F * psi_p);
    rhs.rad_rad = (ric_c.rad_rad + hess_c.rad_rad + dpsi2 / (n - 1)) / (v.f * v.f);
    rhs.tan_tan = (ric_c.tan_tan + hess_c.tan_tan) / (v.f * v.f);
  } else {
    const FrameTensor2 q = fd_substatic_oracle(t, r);
    lhs.rad_rad = q.rad_rad / v.f;
    lhs.tan_tan = q.tan_tan / v.f;
    const FdMetric mc = fd_metric_of(t, true);
    const FrameTensor2 ric_c = fd_ricci_frame(mc, r, kFdStep).t;
    const models::ScalarProfile* fprof = t.f.get();
    const int nn = n;
    const FrameTensor2 hess_c = fd_hessian_frame(
        mc, [fprof, nn](ld x) { return -(nn - 1) * std::log(fprof->value_ld(x)); }, r, kFdStep);
    const double F = v.f * v.f;
    const double dpsi2 = (F * psi_p) * (F * psi_p);
    rhs.rad_rad = (ric_c.rad_rad + hess_c.rad_rad + dpsi2 / (n - 1)) / (v.f * v.f);
    rhs.tan_tan = (ric_c.tan_tan + hess_c.tan_tan) / (v.f * v.f);
  }

  const double diff =
      std::max(std::fabs(lhs.rad_rad - rhs.rad_rad), std::fabs(lhs.tan_tan - rhs.tan_tan));
  std::ostringstream ctx;
  ctx << (path == CurvaturePath::closed_form ? "closed-form" : "finite-difference")
      << " path at r = " << r << "; lhs frame = (" << lhs.rad_rad << ", " << lhs.tan_tan << ")";
  return make_report("cd01-identity", diff, 0.0, tol - diff, 1e-15, 1e-15, ctx.str());
}

FrameTensor2 lixia_ricci(const ProfileTriple& t, double r, double alpha, double gamma) {
  const ProfileVals v = vals(t, r);
  const int n = t.n;
  const double up = v.fp / v.f;
  const double upp = v.fpp / v.f - v.fp * v.fp / (v.f * v.f);
  const FrameTensor2 ric = ricci(t, r);
  const FrameTensor2 hess = hessian_radial(t, r, up, upp);
  const double lap = hess.rad_rad + (n - 1) * hess.tan_tan;
  const double du2 = (v.f * up) * (v.f * up);  // |grad u|^2, du (x) du has rad component du2
  const double trace_term = gamma * lap + (gamma * gamma + (n - 1) * alpha * gamma) * du2;
  FrameTensor2 out;
  out.rad_rad = ric.rad_rad - ((n - 1) * alpha + gamma) * hess.rad_rad +
                ((n - 1) * alpha * alpha - gamma * gamma) * du2 + trace_term;
  out.tan_tan = ric.tan_tan - ((n - 1) * alpha + gamma) * hess.tan_tan + trace_term;
  return out;
}

StressEnergy stress_energy(const ProfileTriple& t, double r, double lambda) {
  const ProfileVals v = vals(t, r);
  const int n = t.n;
  const FrameTensor2 ric = ricci(t, r);
  const FrameTensor2 hess = hessian_radial(t, r, v.fp, v.fpp);
  const double lap = hess.rad_rad + (n - 1) * hess.tan_tan;
  const double R = ric.rad_rad + (n - 1) * ric.tan_tan;
  StressEnergy T;
  T.lambda = lambda;
  T.T_tt = (-lambda + 0.5 * R) * v.f * v.f;
  const double common = lambda - 0.5 * R + lap / v.f;
  T.T_rad = ric.rad_rad - hess.rad_rad / v.f + common;
  T.T_tan = ric.tan_tan - hess.tan_tan / v.f + common;
  return T;
}

CheckReport nec_check(const ProfileTriple& t, double lambda, int samples,
                      std::span<const double> grid, double tol) {
  // Deterministic low-discrepancy angles (golden ratio), plus exact extremes.
  std::vector<double> angles;
  angles.reserve(samples + 2);
  const double golden = 0.6180339887498949;
  for (int i = 0; i < samples; ++i) {
    const double frac = std::fmod((i + 1) * golden, 1.0);
    angles.push_back(0.5 * M_PI * frac);
  }
  angles.push_back(0.0);
  angles.push_back(0.5 * M_PI);

  double min_T = std::numeric_limits<double>::infinity();
  double min_r = 0.0, min_alpha = 0.0;
  double min_Q = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const StressEnergy T = stress_energy(t, r, lambda);
    const double f2 = std::pow(t.f->value(r), 2);
    for (double a : angles) {
      const double c = std::cos(a), s = std::sin(a);
      // X = d_t + Y with Y = f (cos a e_r + sin a e_a): T(X,X) = T_tt + T(Y,Y)
      const double txx = T.T_tt + f2 * (c * c * T.T_rad + s * s * T.T_tan);
      if (txx < min_T) {
        min_T = txx;
        min_r = r;
        min_alpha = a;
      }
    }
    const FrameTensor2 q = substatic_tensor(t, r);
    min_Q = std::min(min_Q, std::min(q.rad_rad, q.tan_tan));
  }

  const bool sign_equivalent = (min_T >= -tol) == (min_Q >= -tol);
  std::ostringstream ctx;
  ctx << "min T(X,X) at r = " << min_r << ", angle = " << min_alpha
      << "; min Q eigenvalue = " << min_Q << "; sign-equivalent with substatic tensor: "
      << (sign_equivalent ? "yes" : "NO");
  // a sign disagreement between the two routes invalidates the verdict
  const double margin = sign_equivalent ? min_T : std::min(min_T, -1.0);
  return make_report("nec", min_T, 0.0, margin, tol, 1e-8, ctx.str());
}

CheckReport nec_check(const ProfileTriple& t, double lambda, int samples) {
  std::vector<double> grid;
  const double lo = t.has_horizon ? 1.05 * t.r_min : t.r_min + 0.05;
  const double hi = std::isfinite(t.r_max) ? 0.95 * t.r_max : 50.0 * std::max(1.0, lo);
  for (int i = 0; i < 64; ++i) grid.push_back(lo * std::pow(hi / lo, (i + 0.5) / 64.0));
  return nec_check(t, lambda, samples, grid);
}

}  // namespace substat::curvature
