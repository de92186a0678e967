#include "substat/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "substat/errors.hpp"
#include "substat/quadrature.hpp"
#include "substat/spline.hpp"

namespace substat::models {

double unit_sphere_area(int dim) {
  // |S^dim| = 2 pi^{(dim+1)/2} / Gamma((dim+1)/2)
  const double k = 0.5 * (dim + 1);
  return 2.0 * std::pow(M_PI, k) / std::tgamma(k);
}

double unit_ball_volume(int dim) { return unit_sphere_area(dim - 1) / dim; }

const char* family_name(Family f) {
  switch (f) {
    case Family::space_form: return "space-form";
    case Family::schwarzschild: return "schwarzschild";
    case Family::reissner_nordstrom: return "reissner-nordstrom";
    case Family::schwarzschild_de_sitter: return "schwarzschild-de-sitter";
    case Family::schwarzschild_ads: return "schwarzschild-ads";
    case Family::custom: return "custom";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::space_form, Family::schwarzschild, Family::reissner_nordstrom,
                   Family::schwarzschild_de_sitter, Family::schwarzschild_ads, Family::custom})
    if (s == family_name(f)) return f;
  fail(ErrorCode::ConfigError, "unknown family '" + s + "'");
}

CrossSection CrossSection::round_sphere(int dim) {
  CrossSection cs;
  cs.dim = dim;
  cs.unit_area = unit_sphere_area(dim);
  cs.einstein_const = 1.0;
  cs.kind = "round-sphere";
  return cs;
}

void CrossSection::validate() const {
  if (dim < 2) fail(ErrorCode::ConfigError, "cross-section dim must be >= 2");
  if (!(unit_area > 0.0)) fail(ErrorCode::ConfigError, "cross-section unit_area must be > 0");
  if (!(einstein_const >= 1.0))
    fail(ErrorCode::ConfigError, "cross-section einstein_const must be >= 1");
  if (kind == "round-sphere") {
    const double want = unit_sphere_area(dim);
    if (std::fabs(unit_area - want) > 1e-9 * want || std::fabs(einstein_const - 1.0) > 1e-12)
      fail(ErrorCode::ConfigError, "round-sphere cross-section must carry |S^{n-1}| and lambda=1");
  }
}

namespace {

class AnalyticProfile final : public ScalarProfile {
 public:
  AnalyticProfile(std::function<long double(long double)> v,
                  std::function<long double(long double)> dv,
                  std::function<long double(long double)> ddv)
      : v_(std::move(v)), dv_(std::move(dv)), ddv_(std::move(ddv)) {}

  void eval(double r, double& v, double& dv, double& ddv) const override {
    v = static_cast<double>(v_(r));
    dv = static_cast<double>(dv_(r));
    ddv = static_cast<double>(ddv_(r));
  }
  long double value_ld(long double r) const override { return v_(r); }

 private:
  std::function<long double(long double)> v_, dv_, ddv_;
};

// f = sqrt(w), w(r) = a0 + a2 r^2 + am r^{2-n} + aq r^{4-2n}. Values below the
// stored horizon radius clamp to the horizon definition f = 0.
class SqrtPolyProfile final : public ScalarProfile {
 public:
  SqrtPolyProfile(int n, double a0, double a2, double am, double aq, double horizon_r)
      : n_(n), a0_(a0), a2_(a2), am_(am), aq_(aq), horizon_r_(horizon_r) {}

  // zero coefficients are skipped so capped families evaluate cleanly at r = 0
  long double w(long double r) const {
    long double v = a0_ + a2_ * r * r;
    if (am_ != 0.0L) v += am_ * std::pow(r, (long double)(2 - n_));
    if (aq_ != 0.0L) v += aq_ * std::pow(r, (long double)(4 - 2 * n_));
    return v;
  }
  long double wp(long double r) const {
    long double v = 2.0L * a2_ * r;
    if (am_ != 0.0L) v += (2 - n_) * am_ * std::pow(r, (long double)(1 - n_));
    if (aq_ != 0.0L) v += (4 - 2 * n_) * aq_ * std::pow(r, (long double)(3 - 2 * n_));
    return v;
  }
  long double wpp(long double r) const {
    long double v = 2.0L * a2_;
    if (am_ != 0.0L) v += (2 - n_) * (1 - n_) * am_ * std::pow(r, (long double)(-n_));
    if (aq_ != 0.0L) v += (4 - 2 * n_) * (3 - 2 * n_) * aq_ * std::pow(r, (long double)(2 - 2 * n_));
    return v;
  }

  void eval(double r, double& v, double& dv, double& ddv) const override {
    if (horizon_r_ > 0.0 && r <= horizon_r_) {
      v = 0.0;
      dv = std::numeric_limits<double>::infinity();
      ddv = -std::numeric_limits<double>::infinity();
      return;
    }
    const long double wv = std::max<long double>(w(r), 0.0L);
    const long double fv = std::sqrt(wv);
    v = static_cast<double>(fv);
    if (fv == 0.0L) {
      dv = std::numeric_limits<double>::infinity();
      ddv = -std::numeric_limits<double>::infinity();
      return;
    }
    const long double w1 = wp(r), w2 = wpp(r);
    dv = static_cast<double>(w1 / (2.0L * fv));
    ddv = static_cast<double>(w2 / (2.0L * fv) - w1 * w1 / (4.0L * wv * fv));
  }
  long double value_ld(long double r) const override {
    if (horizon_r_ > 0.0 && r <= horizon_r_) return 0.0L;
    return std::sqrt(std::max<long double>(w(r), 0.0L));
  }

 private:
  int n_;
  long double a0_, a2_, am_, aq_;
  double horizon_r_;
};

class ConstantProfile final : public ScalarProfile {
 public:
  explicit ConstantProfile(double c) : c_(c) {}
  void eval(double, double& v, double& dv, double& ddv) const override {
    v = c_;
    dv = 0.0;
    ddv = 0.0;
  }
  long double value_ld(long double) const override { return c_; }

 private:
  double c_;
};

class LinearProfile final : public ScalarProfile {
 public:
  void eval(double r, double& v, double& dv, double& ddv) const override {
    v = r;
    dv = 1.0;
    ddv = 0.0;
  }
  long double value_ld(long double r) const override { return r; }
};

class SplineProfile final : public ScalarProfile {
 public:
  SplineProfile(const std::vector<double>& r, const std::vector<double>& v) : s_(r, v) {}
  void eval(double r, double& v, double& dv, double& ddv) const override { s_.eval(r, v, dv, ddv); }

 private:
  CubicSpline s_;
};

}  // namespace

ProfilePtr make_analytic_profile(std::function<long double(long double)> v,
                                 std::function<long double(long double)> dv,
                                 std::function<long double(long double)> ddv) {
  return std::make_shared<AnalyticProfile>(std::move(v), std::move(dv), std::move(ddv));
}

ProfilePtr make_constant_profile(double c) { return std::make_shared<ConstantProfile>(c); }

ProfilePtr make_linear_profile() { return std::make_shared<LinearProfile>(); }

ProfilePtr make_sqrt_poly_profile(int n, double a0, double a2, double am, double aq,
                                  double horizon_r) {
  return std::make_shared<SqrtPolyProfile>(n, a0, a2, am, aq, horizon_r);
}

ProfilePtr make_spline_profile(const std::vector<double>& r, const std::vector<double>& v) {
  return std::make_shared<SplineProfile>(r, v);
}

void ProfileTriple::check_domain(double r) const {
  const double slack = 1e-12 * std::max(1.0, std::fabs(r));
  if (r < r_min - slack || r > r_max + slack)
    fail(ErrorCode::OutOfDomain, "r = " + std::to_string(r) + " outside [" +
                                     std::to_string(r_min) + ", " + std::to_string(r_max) + "]");
}

std::array<double, 3> ProfileTriple::eval_f(double r) const {
  check_domain(r);
  std::array<double, 3> out;
  f->eval(r, out[0], out[1], out[2]);
  return out;
}

std::array<double, 3> ProfileTriple::eval_b(double r) const {
  check_domain(r);
  std::array<double, 3> out;
  b->eval(r, out[0], out[1], out[2]);
  return out;
}

double ProfileTriple::sphere_mean_curvature(double r) const {
  const auto fv = eval_f(r);
  const auto bv = eval_b(r);
  return (n - 1) * fv[0] * bv[1] / bv[0];
}

std::array<double, 3> eval_f(const ProfileTriple& triple, double r) { return triple.eval_f(r); }

namespace {

struct HorizonScan {
  // roots of w with w' > 0 (horizons) and w' < 0 (cosmological horizons)
  std::vector<double> increasing;
  std::vector<double> decreasing;
  bool positive_somewhere = false;
};

double refine_root(const SqrtPolyProfile& p, double lo, double hi) {
  // bisection to a tight bracket, then Newton polish on w
  double wlo = static_cast<double>(p.w(lo));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double wm = static_cast<double>(p.w(mid));
    if ((wm > 0) == (wlo > 0)) {
      lo = mid;
      wlo = wm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  long double r = 0.5L * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const long double w = p.w(r);
    const long double wp = p.wp(r);
    if (wp == 0.0L) break;
    r -= w / wp;
  }
  return static_cast<double>(r);
}

HorizonScan scan_roots(const SqrtPolyProfile& p, double scale) {
  HorizonScan scan;
  const int kGrid = 1200;
  const double lo = 1e-6 * scale, hi = 1e6 * scale;
  double prev_r = lo;
  double prev_w = static_cast<double>(p.w(prev_r));
  scan.positive_somewhere = prev_w > 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double r = lo * std::pow(hi / lo, double(i) / kGrid);
    const double w = static_cast<double>(p.w(r));
    if (w > 0) scan.positive_somewhere = true;
    if ((w > 0) != (prev_w > 0)) {
      const double root = refine_root(p, prev_r, r);
      if (static_cast<double>(p.wp(root)) > 0)
        scan.increasing.push_back(root);
      else
        scan.decreasing.push_back(root);
    }
    prev_r = r;
    prev_w = w;
  }
  return scan;
}

ProfileTriple build_closed_form(const ModelSpec& spec) {
  const int n = spec.n;
  const double a2 = -2.0 * spec.lambda / (n * (n - 1.0));
  const double am = -2.0 * spec.mass;
  const double aq = spec.charge * spec.charge;

  double scale = 1.0;
  if (spec.mass > 0) scale = std::max(scale, std::pow(2.0 * spec.mass, 1.0 / (n - 2.0)));
  if (spec.lambda != 0.0)
    scale = std::max(scale, std::sqrt(n * (n - 1.0) / (2.0 * std::fabs(spec.lambda))));

  SqrtPolyProfile probe(n, 1.0, a2, am, aq, 0.0);
  const HorizonScan scan = scan_roots(probe, scale);
  if (!scan.positive_somewhere) fail(ErrorCode::DomainEmpty, "f^2 < 0 on the scanned range");

  ProfileTriple t;
  t.n = n;
  t.cross_section = spec.cross_section;
  t.b = make_linear_profile();
  t.family = spec.family;
  t.lambda = spec.lambda;
  t.mass = spec.mass;
  t.charge = spec.charge;

  double horizon = 0.0;
  if (spec.mass > 0) {
    if (scan.increasing.empty())
      fail(ErrorCode::NakedSingularity,
           "no horizon root with (f^2)' > 0 for m = " + std::to_string(spec.mass) +
               ", q = " + std::to_string(spec.charge));
    horizon = scan.increasing.back();
    t.r_min = horizon;
    t.has_horizon = true;
  } else {
    if (aq != 0.0 && !scan.increasing.empty()) {
      // charged, massless: inner root still acts as the domain boundary
      horizon = scan.increasing.back();
      t.r_min = horizon;
      t.has_horizon = true;
    } else {
      t.r_min = 0.0;
      t.has_horizon = false;
    }
  }

  // Domain: component of {f^2 > 0} adjacent to r_min; a decreasing root above
  // r_min (cosmological horizon) bounds it from above.
  t.r_max = std::numeric_limits<double>::infinity();
  for (double rc : scan.decreasing)
    if (rc > t.r_min) {
      t.r_max = std::min(t.r_max, rc);
      break;
    }

  t.f = make_sqrt_poly_profile(n, 1.0, a2, am, aq, horizon);
  return t;
}

ProfileTriple build_custom(const ModelSpec& spec) {
  const auto& tab = spec.profile_table;
  if (tab.size() < 8) fail(ErrorCode::BadProfile, "custom profile_table needs >= 8 samples");
  std::vector<double> r, fv, bv;
  r.reserve(tab.size());
  for (const auto& row : tab) {
    if (!r.empty() && !(row[0] > r.back()))
      fail(ErrorCode::BadProfile, "custom profile_table r-grid must be strictly increasing");
    r.push_back(row[0]);
    fv.push_back(row[1]);
    bv.push_back(row[2]);
  }
  for (std::size_t i = 1; i < bv.size(); ++i)
    if (!(bv[i] > 0)) fail(ErrorCode::BadProfile, "custom profile must keep b > 0");

  ProfileTriple t;
  t.n = spec.n;
  t.cross_section = spec.cross_section;
  t.family = Family::custom;
  t.r_min = r.front();
  t.r_max = r.back();
  t.has_horizon = fv.front() == 0.0;
  t.f = make_spline_profile(r, fv);
  t.b = make_spline_profile(r, bv);
  return t;
}

}  // namespace

ProfileTriple build_model(const ModelSpec& spec) {
  if (spec.n < 3) fail(ErrorCode::ConfigError, "n must be >= 3");
  if (spec.mass < 0) fail(ErrorCode::ConfigError, "negative mass not supported");
  spec.cross_section.validate();
  if (spec.cross_section.dim != spec.n - 1)
    fail(ErrorCode::ConfigError, "cross-section dim must equal n-1");

  switch (spec.family) {
    case Family::custom:
      return build_custom(spec);
    case Family::space_form:
    case Family::schwarzschild:
    case Family::reissner_nordstrom:
    case Family::schwarzschild_de_sitter:
    case Family::schwarzschild_ads: {
      // family tags constrain the parameter signs; all values feed the same
      // closed-form metric coefficient
      if (spec.family == Family::space_form && (spec.mass != 0 || spec.charge != 0))
        fail(ErrorCode::ConfigError, "space-form needs mass = charge = 0");
      if (spec.family == Family::schwarzschild_de_sitter && !(spec.lambda > 0))
        fail(ErrorCode::ConfigError, "schwarzschild-de-sitter needs lambda > 0");
      if (spec.family == Family::schwarzschild_ads && !(spec.lambda < 0))
        fail(ErrorCode::ConfigError, "schwarzschild-ads needs lambda < 0");
      if ((spec.family == Family::schwarzschild || spec.family == Family::reissner_nordstrom) &&
          spec.lambda != 0)
        fail(ErrorCode::ConfigError, "this family needs lambda = 0");
      return build_closed_form(spec);
    }
  }
  fail(ErrorCode::ConfigError, "unhandled family");
}

const char* end_kind_name(EndKind k) {
  switch (k) {
    case EndKind::f_complete: return "f-complete";
    case EndKind::conformally_compact: return "conformally-compact";
    case EndKind::undetermined: return "undetermined";
  }
  return "?";
}

EndClass classify_end(const ProfileTriple& triple) {
  EndClass out;
  std::ostringstream ev;

  if (std::isfinite(triple.r_max)) {
    out.kind = EndKind::undetermined;
    out.rho_total = std::numeric_limits<double>::quiet_NaN();
    ev << "finite r_max = " << triple.r_max << " (finite g-length tail; horizon-type boundary)";
    out.evidence = ev.str();
    return out;
  }

  const double r_ref = triple.has_horizon ? 2.0 * triple.r_min : std::max(1.0, triple.r_min + 1.0);
  const auto inv_f2 = [&](double r) {
    const double f = triple.f->value(r);
    return 1.0 / (f * f);
  };

  // Partial integrals of d rho = dr / f^2 on geometrically growing windows.
  const int kWindows = 40;
  std::vector<double> cumulative(kWindows + 1, 0.0);
  double lo = r_ref;
  for (int k = 0; k < kWindows; ++k) {
    const double hi = lo * 2.0;
    cumulative[k + 1] = cumulative[k] + quad::integrate(inv_f2, lo, hi, 1e-11, 1e-300);
    lo = hi;
  }

  int divergent_windows = 0;
  for (int k = kWindows / 2; k < kWindows; ++k)
    if (cumulative[k] > 0 && cumulative[k + 1] / cumulative[k] > 1.0 + 1e-3) ++divergent_windows;
  bool tail_cauchy = true;
  for (int k = kWindows - 3; k < kWindows; ++k)
    tail_cauchy = tail_cauchy &&
                  (cumulative[k + 1] - cumulative[k]) < 1e-10 * (1.0 + cumulative[k]);

  if (divergent_windows == kWindows - kWindows / 2) {
    out.kind = EndKind::f_complete;
    out.rho_total = std::numeric_limits<double>::infinity();
    ev << "integral dr/f^2 grows by > 1+1e-3 on every tail window (rho -> inf); "
       << "int f dt = int dr diverges along radial rays";
    out.evidence = ev.str();
    return out;
  }

  if (tail_cauchy) {
    // Cauchy increments vanish: rho_total finite. Conformal compactness needs
    // 1/f to vanish to first order in the compactified coordinate x = 1/r,
    // i.e. r/f must approach a finite nonzero limit.
    const double R = r_ref * std::pow(2.0, kWindows);
    const double v1 = R / 8 / triple.f->value(R / 8);
    const double v2 = R / 4 / triple.f->value(R / 4);
    const double v3 = R / 2 / triple.f->value(R / 2);
    // fit v = L + c/r on the last two points, consistency with the third
    const double L = v3 + (v3 - v2);
    const double L_prev = v2 + (v2 - v1);
    out.rho_total = cumulative[kWindows];
    if (L > 1e-12 && std::fabs(L - L_prev) < 1e-3 * std::fabs(L)) {
      out.kind = EndKind::conformally_compact;
      ev << "rho_total ~= " << out.rho_total << "; r/f -> " << L
         << " (1/f extends with nonzero derivative at the conformal boundary)";
    } else {
      out.kind = EndKind::undetermined;
      ev << "rho_total finite but compactified 1/f test inconclusive (r/f limit " << L << ")";
    }
    out.evidence = ev.str();
    return out;
  }

  out.kind = EndKind::undetermined;
  out.rho_total = std::numeric_limits<double>::quiet_NaN();
  ev << "window growth neither persistently divergent (" << divergent_windows << " of "
     << kWindows - kWindows / 2 << ") nor tail-Cauchy";
  out.evidence = ev.str();
  return out;
}

CheckReport check_f_pinching(const ProfileTriple& triple, double k, double r_a, double r_b) {
  if (!(k > 0 && k < 1)) fail(ErrorCode::ConfigError, "pinching exponent k must be in (0,1)");
  triple.check_domain(r_a);
  triple.check_domain(r_b);

  const int kGrid = 400;
  double c_lower = std::numeric_limits<double>::infinity();
  double c_upper = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double r = r_a * std::pow(r_b / r_a, double(i) / kGrid);
    const double f = triple.f->value(r);
    c_lower = std::min(c_lower, f * std::pow(r, k));    // c: inf of f r^k
    c_upper = std::max(c_upper, f * std::pow(r, -k));   // C: sup of f r^-k
  }

  // Effective exponent on the outer part of the window; the two-sided bound
  // extends to the tail only if |d log f / d log r| stays below k.
  const double r1 = std::sqrt(r_a * r_b), r2 = r_b;
  const double alpha =
      std::log(triple.f->value(r2) / triple.f->value(r1)) / std::log(r2 / r1);

  std::ostringstream ctx;
  ctx << "window [" << r_a << ", " << r_b << "], c = " << c_lower << ", C = " << c_upper
      << ", effective exponent = " << alpha;
  return make_report("f-pinching", std::fabs(alpha), k, k - std::fabs(alpha), 1e-12, 1e-12,
                     ctx.str());
}

CheckReport check_uniformity_criteria(const ProfileTriple& triple) {
  const EndClass end = classify_end(triple);
  if (end.kind != EndKind::f_complete)
    fail(ErrorCode::InapplicableEnd, "uniformity criteria need an f-complete end");

  const double r0 = triple.has_horizon ? 2.0 * triple.r_min : std::max(1.0, triple.r_min + 1.0);
  const double R = 1e3 * r0;

  // Criterion A: f -> 1. Richardson in 1/r on {R/4, R/2, R} plus a tail
  // oscillation guard.
  const double fA = triple.f->value(R / 4), fB = triple.f->value(R / 2), fC = triple.f->value(R);
  const double limit = fC + (fC - fB);          // 2-term fit a0 + a1/r at {R/2, R}
  const double limit_prev = fB + (fB - fA);
  double sup_dev_inner = 0.0, sup_dev_outer = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double r = (R / 16) * std::pow(16.0, double(i) / 64);
    const double dev = std::fabs(triple.f->value(r) - 1.0);
    if (r < R / 4)
      sup_dev_inner = std::max(sup_dev_inner, dev);
    else
      sup_dev_outer = std::max(sup_dev_outer, dev);
  }
  const bool f_to_one = std::fabs(limit - 1.0) < 1e-6 &&
                        std::fabs(limit - limit_prev) < 1e-4 * std::max(1.0, std::fabs(limit)) &&
                        sup_dev_outer <= sup_dev_inner + 1e-12;

  if (f_to_one) {
    std::ostringstream ctx;
    ctx << "criterion: f -> 1 at infinity (extrapolated limit " << limit << ")";
    return make_report("uniformity", limit, 1.0, 1e-6 - std::fabs(limit - 1.0), 1e-12, 1e-12,
                       ctx.str());
  }

  // Criterion B: |grad f|_g = f |f'| <= C rho^{-1-eps}. Fit the log-log slope
  // on the tail against rho(r).
  const auto inv_f2 = [&](double r) {
    const double f = triple.f->value(r);
    return 1.0 / (f * f);
  };
  double rho = 0.0, prev = r0;
  std::vector<double> log_rho, log_grad;
  bool grad_zero = true;
  for (int i = 1; i <= 24; ++i) {
    const double r = (R / 100) * std::pow(100.0, double(i) / 24);
    rho += quad::integrate(inv_f2, prev, r, 1e-10, 1e-300);
    prev = r;
    double f, df, ddf;
    triple.f->eval(r, f, df, ddf);
    const double grad = std::fabs(f * df);
    if (grad > 1e-14) grad_zero = false;
    if (grad > 0 && rho > 0) {
      log_rho.push_back(std::log(rho));
      log_grad.push_back(std::log(grad));
    }
  }
  if (grad_zero)
    return make_report("uniformity", 0.0, 0.0, 0.0, 1e-12, 1e-12,
                       "criterion: |grad f| identically ~0 on the tail");

  double slope = 0.0, resid = std::numeric_limits<double>::infinity();
  if (log_rho.size() >= 4) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(log_rho.size());
    for (int i = 0; i < m; ++i) {
      sx += log_rho[i];
      sy += log_grad[i];
      sxx += log_rho[i] * log_rho[i];
      sxy += log_rho[i] * log_grad[i];
    }
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icept = (sy - slope * sx) / m;
    resid = 0.0;
    for (int i = 0; i < m; ++i)
      resid = std::max(resid, std::fabs(log_grad[i] - slope * log_rho[i] - icept));
  }
  const double eps_min = 0.05;
  std::ostringstream ctx;
  if (slope < -1.0 - eps_min && resid < 0.5) {
    ctx << "criterion: |grad f| <= C rho^{-1-eps}, fitted decay exponent " << -slope
        << " (eps = " << (-slope - 1.0) << ")";
    return make_report("uniformity", -slope, 1.0 + eps_min, -slope - (1.0 + eps_min), 1e-12, 1e-12,
                       ctx.str());
  }
  ctx << "uniformity not certified: f limit " << limit << " (needs 1), gradient decay slope "
      << slope << " (needs < -1.05, fit residual " << resid << ")";
  return make_report("uniformity", slope, -1.0 - eps_min, (-1.0 - eps_min) - slope, 1e-12, 1e-12,
                     ctx.str());
}

}  // namespace substat::models
