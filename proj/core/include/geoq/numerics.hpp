// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>

namespace geoq {

/// Wrap an angle to the half-open interval (-pi, pi].
double wrap_angle(double a);

/// Composite Simpson rule over uniformly spaced samples with spacing h.
/// An odd number of intervals is handled with a Simpson-3/8 tail, so the
/// rule stays fourth order for any sample count >= 2 (trapezoid at n=2).
double simpson_uniform(std::span<const double> f, double h);

/// Bracketed root finding (Brent's method: bisection/secant/inverse
/// quadratic hybrid).  f(a) and f(b) must have opposite signs.
/// Throws std::invalid_argument when the bracket does not straddle a root.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-14, double ftol = 0.0, int max_iter = 200);

}  // namespace geoq
