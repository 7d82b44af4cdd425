// SPDX-License-Identifier: MIT
//
// Adaptive embedded Runge-Kutta integrator (Dormand-Prince 5(4), FSAL)
// with fourth-order dense output, generic over fixed-size Eigen vectors.
// Integration restarts at supplied breakpoints so derivative kinks in the
// drive never sit inside a step.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoq {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  /// Upper bound on the internal step; <= 0 means unlimited (the segment
  /// length is always an implicit bound).
  double max_step = 0.0;
  /// Number of uniformly spaced output samples over [0, duration],
  /// endpoints included.
  int sample_count = 4097;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("integrator tolerances must be positive");
    if (sample_count < 2)
      throw std::invalid_argument("sample_count must be at least 2");
  }
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " at t=" + std::to_string(t)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// b - b* (5th-order weights minus the embedded 4th-order weights).
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

template <class Vec>
double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol,
                  double rtol) {
  double acc = 0.0;
  for (long i = 0; i < err.size(); ++i) {
    const double sc =
        atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double q = std::abs(err(i)) / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

}  // namespace detail

/// Interpolating polynomial for one accepted step.
template <class Vec>
struct DenseStep {
  double t0 = 0.0, h = 0.0;
  Vec c1, c2, c3, c4, c5;

  Vec eval(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    return c1 + th * (c2 + th1 * (c3 + th * (c4 + th1 * c5)));
  }
};

/// Integrate dy/dt = rhs(t, y) over consecutive smooth segments delimited
/// by `breakpoints` (ascending; first entry = start, last = end).  For each
/// entry of `sample_times` (ascending, inside the time span) `emit(i, t, y)`
/// is invoked in order.  After every accepted step `on_step(t, y)` may
/// inspect and adjust the running state (the library uses it to renormalize
/// at sample crossings); it receives the flag `crossed_sample`.
///
/// Throws IntegrationError on step-size underflow.
template <class Vec, class Rhs, class Emit, class StepHook>
Vec integrate_dense(Rhs&& rhs, std::span<const double> breakpoints,
                    std::span<const double> sample_times, Vec y,
                    const IntegratorConfig& cfg, Emit&& emit,
                    StepHook&& on_step) {
  cfg.validate();
  constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 5.0;
  const double t_begin = breakpoints.front();
  const double t_final = breakpoints.back();
  const double span = t_final - t_begin;
  const double eps = std::numeric_limits<double>::epsilon();

  std::size_t next_sample = 0;
  auto emit_up_to = [&](double t_hi, const DenseStep<Vec>& dense) {
    while (next_sample < sample_times.size() &&
           sample_times[next_sample] <= t_hi + 4.0 * eps * std::max(1.0, std::abs(t_hi))) {
      const double ts = sample_times[next_sample];
      emit(next_sample, ts, dense.eval(std::min(ts, t_hi)));
      ++next_sample;
    }
  };

  // Sample(s) exactly at the start.
  while (next_sample < sample_times.size() &&
         sample_times[next_sample] <=
             t_begin + 4.0 * eps * std::max(1.0, std::abs(t_begin))) {
    emit(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }

  for (std::size_t seg = 0; seg + 1 < breakpoints.size(); ++seg) {
    const double a = breakpoints[seg];
    const double b = breakpoints[seg + 1];
    if (!(b > a)) continue;

    double t = a;
    Vec k1 = rhs(t, y);

    // Initial step size (curvature-probed).
    double h;
    {
      double d0 = 0.0, d1n = 0.0;
      for (long i = 0; i < y.size(); ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y(i));
        d0 += std::pow(std::abs(y(i)) / sc, 2);
        d1n += std::pow(std::abs(k1(i)) / sc, 2);
      }
      d0 = std::sqrt(d0 / static_cast<double>(y.size()));
      d1n = std::sqrt(d1n / static_cast<double>(y.size()));
      double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 * (b - a) : 0.01 * d0 / d1n;
      h0 = std::min(h0, b - a);
      Vec y1 = y + h0 * k1;
      Vec f1 = rhs(t + h0, y1);
      double d2 = 0.0;
      for (long i = 0; i < y.size(); ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y(i));
        d2 += std::pow(std::abs(f1(i) - k1(i)) / sc, 2);
      }
      d2 = std::sqrt(d2 / static_cast<double>(y.size())) / h0;
      const double dm = std::max(d1n, d2);
      const double h1 = (dm <= 1e-15) ? std::max(1e-6 * (b - a), h0 * 1e-3)
                                      : std::pow(0.01 / dm, 0.2);
      h = std::min({100.0 * h0, h1, b - a});
    }
    if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);

    while (t < b) {
      h = std::min(h, b - t);
      if (h < 16.0 * eps * std::max(std::abs(t), std::abs(span))) {
        throw IntegrationError("step size underflow", t);
      }

      using namespace detail;
      const Vec k2 = rhs(t + c2 * h, Vec(y + h * (a21 * k1)));
      const Vec k3 = rhs(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
      const Vec k4 = rhs(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
      const Vec k5 = rhs(t + c5 * h,
                         Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
      const Vec k6 = rhs(
          t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
      const Vec y_new =
          y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      const Vec k7 = rhs(t + h, y_new);

      const Vec err_v =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double err =
          detail::error_norm(err_v, y, y_new, cfg.abs_tol, cfg.rel_tol);

      if (err <= 1.0) {
        DenseStep<Vec> dense;
        dense.t0 = t;
        dense.h = h;
        dense.c1 = y;
        dense.c2 = y_new - y;
        dense.c3 = h * k1 - dense.c2;
        dense.c4 = dense.c2 - h * k7 - dense.c3;
        dense.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

        const std::size_t first_pending = next_sample;
        const double t_new = t + h;
        const bool last_step_of_seg = (t_new >= b - 4.0 * eps * std::max(1.0, std::abs(b)));
        emit_up_to(last_step_of_seg ? b : t_new, dense);

        t = t_new;
        y = y_new;
        k1 = k7;
        on_step(t, y, next_sample > first_pending);

        double fac = kSafety * std::pow(err > 0.0 ? err : 1e-10, -0.2);
        h *= std::min(kFacMax, std::max(kFacMin, fac));
        if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
      } else {
        const double fac = std::max(kFacMin, kSafety * std::pow(err, -0.2));
        h *= fac;
      }
    }
  }

  // Anything left (samples at exactly t_final, ulp stragglers).
  while (next_sample < sample_times.size()) {
    emit(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }
  return y;
}

/// Uniform sample grid over [0, duration] with cfg.sample_count points.
std::vector<double> uniform_samples(double duration, int count);

}  // namespace geoq
