// SPDX-License-Identifier: MIT
#include "geoq/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoq {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(a, two_pi);  // (-pi, pi) with ties to even
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

double simpson_uniform(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) throw std::invalid_argument("simpson_uniform needs >= 2 samples");
  if (n == 2) return 0.5 * h * (f[0] + f[1]);

  const std::size_t intervals = n - 1;
  double acc = 0.0;
  std::size_t m = intervals;
  std::size_t tail = 0;
  if (m % 2 != 0) {
    // Peel three intervals off the end for a Simpson-3/8 tail.
    if (m >= 3) {
      tail = 3;
      m -= 3;
    } else {
      return 0.5 * h * (f[0] + f[1]);  // unreachable for n >= 3
    }
  }
  for (std::size_t i = 0; i + 2 <= m; i += 2) {
    acc += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  }
  if (tail == 3) {
    const std::size_t i = m;
    acc += (3.0 * h / 8.0) * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
  }
  return acc;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, double ftol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::invalid_argument("brent_root: no sign change over the bracket");
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= ftol) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace geoq
