#pragma once

#include "substat/models.hpp"

namespace substat::catalog {

using models::ProfileTriple;

// Euclidean R^n: f == 1, b = r.
ProfileTriple flat(int n);

// de Sitter cap f = sqrt(1 - r^2), b = r on [0, 1).
ProfileTriple desitter_cap(int n);

// Vacuum-static cap with f(0) = f0: f = sqrt(f0^2 - r^2), b = r/f0 on [0, f0).
ProfileTriple rescaled_cap(int n, double f0);

// Round sphere cap: f == 1, b = sin r on [0, pi).
ProfileTriple round_sphere_cap(int n);

// f == 1 with a concave warp bend b = r - a * softplus_w(r - rc): strictly
// substatic away from the bend (amplitude 0 < a < 1).
ProfileTriple concave_warp(int n, double amplitude, double steepness, double center);

// f == 1 with a convex warp bend b = r + a * softplus_w(r - rc): violates the
// substatic condition on the bend (Ric < 0 radially).
ProfileTriple convex_warp(int n, double amplitude, double steepness, double center);

// Twisted product f == 1, b == 1 (two cylindrical ends; vanishing AVR).
ProfileTriple twisted_product(int n);

// f = r^p, b = r on [r_lo, inf).
ProfileTriple power_law_f(int n, double p, double r_lo = 0.25);

// f = 1 + 0.5 sin(log r), b = r: oscillating tail defeating both uniformity
// criteria.
ProfileTriple oscillating_f(int n, double r_lo = 0.5);

// b(r) = r + 0.1 sin r with f == 1 (mean-convex, non-trivial warp).
ProfileTriple wavy_warp(int n);

}  // namespace substat::catalog
