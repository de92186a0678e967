#pragma once

#include <functional>
#include <vector>

namespace substat::quad {

// Adaptive Gauss(7)-Kronrod(15) on [a, b]. Signed interval allowed (a > b).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-14, int max_depth = 48);

// Fixed Gauss-Legendre rule with N nodes mapped to [a, b].
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  static const GaussLegendre& unit(int n);  // cached rule on [-1, 1]
  static GaussLegendre on(double a, double b, int n);

  template <class F>
  double sum(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

// Richardson extrapolation for a quantity with leading error c*h^order,
// given values at steps h and h/2.
inline double richardson(double v_h, double v_h2, int order) {
  const double p = static_cast<double>(1 << order);
  return (p * v_h2 - v_h) / (p - 1.0);
}

}  // namespace substat::quad
