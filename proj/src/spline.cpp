#include "substat/spline.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include "substat/errors.hpp"

namespace substat {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) fail(ErrorCode::BadProfile, "spline needs >= 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) fail(ErrorCode::BadProfile, "non-monotone sample grid");

  // Natural end conditions: m[0] = m[n-1] = 0. Thomas solve for interior m.
  m_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double w = h0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

void CubicSpline::eval(double t, double& v, double& dv, double& ddv) const {
  const std::size_t n = x_.size();
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
  if (i == 0) i = 1;
  if (i >= n) i = n - 1;
  const double h = x_[i] - x_[i - 1];
  const double a = (x_[i] - t) / h;
  const double b = (t - x_[i - 1]) / h;
  v = a * y_[i - 1] + b * y_[i] +
      ((a * a * a - a) * m_[i - 1] + (b * b * b - b) * m_[i]) * h * h / 6.0;
  dv = (y_[i] - y_[i - 1]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i - 1] +
       (3.0 * b * b - 1.0) / 6.0 * h * m_[i];
  ddv = a * m_[i - 1] + b * m_[i];
}

double CubicSpline::value(double t) const {
  double v, dv, ddv;
  eval(t, v, dv, ddv);
  return v;
}

}  // namespace substat
