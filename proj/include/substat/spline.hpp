#pragma once

#include <vector>

namespace substat {

// Natural cubic spline with C2 evaluation. Knots must be strictly increasing.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  // value, first and second derivative at t (clamped-polynomial extrapolation
  // outside the knot range)
  void eval(double t, double& v, double& dv, double& ddv) const;
  double value(double t) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

}  // namespace substat
