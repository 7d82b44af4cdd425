// SPDX-License-Identifier: MIT
#include "geoq/calibration.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geoq/dynamics.hpp"
#include "geoq/numerics.hpp"
#include "geoq/phases.hpp"
#include "geoq/schedule.hpp"

namespace geoq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double elliptic_k(double m) {
  if (!(m < 1.0)) {
    throw std::domain_error("elliptic_k: parameter must satisfy m < 1");
  }
  if (m < 0.0) {
    const double mu = -m;
    return elliptic_k(mu / (1.0 + mu)) / std::sqrt(1.0 + mu);
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  // AGM iteration; quadratic convergence, ~5 iterations for double.
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

double gamma_to_chi0(double gamma) {
  if (!(gamma >= 0.0) || !(gamma <= 2.0 * kPi)) {
    throw std::domain_error("gamma_to_chi0: gamma must lie in [0, 2 pi]");
  }
  return std::acos(1.0 - gamma / kPi);
}

double simulated_dynamic_phase(const DeviceParams& params, double chi0,
                               double omega, const IntegratorConfig& cfg) {
  const Schedule sched = process_ii(params, ProcessIIParams{chi0, omega});
  const SpinState psi0 = SpinState::from_angles(chi0, 0.0);
  const Trajectory traj = evolve_state(params, sched, psi0, cfg);
  return dynamic_phase(traj);
}

CalibrationResult omega_zero_dynamic(const DeviceParams& params, double chi0,
                                     int n_periods, const IntegratorConfig& cfg) {
  params.validate();
  if (params.is_degenerate()) {
    throw std::invalid_argument(
        "omega_zero_dynamic: requires an asymmetric SQUID (e1 != e2)");
  }
  if (!(chi0 > 0.0) || !(chi0 < kPi)) {
    throw std::domain_error("omega_zero_dynamic: chi0 must lie in (0, pi)");
  }
  const double s2 = std::sin(2.0 * chi0);
  if (n_periods < 0) {
    throw std::domain_error(
        "omega_zero_dynamic: the per-period dynamic phase cannot reach "
        "negative multiples of 2 pi");
  }

  const double d = params.e1 - params.e2;
  const double m = -4.0 * params.e1 * params.e2 / (d * d);
  const double kk = elliptic_k(m);

  double omega;  // internal units (1/tau0)
  if (n_periods == 0) {
    if (std::abs(s2) < 1e-12) {
      throw std::domain_error(
          "omega_zero_dynamic: sin(2 chi0) vanishes (chi0 in {0, pi/2, pi}); "
          "the zero-dynamic-phase frequency is singular there");
    }
    omega = -4.0 * kk / (kPi * s2);
  } else {
    // Dynamic phase equal to 2 pi n: |omega| = 2 K / (pi sin(chi0) (2n - s cos(chi0)));
    // both traversal signs work for n >= 1, the positive branch is returned.
    omega = 2.0 * kk / (kPi * std::sin(chi0) * (2.0 * n_periods - std::cos(chi0)));
  }

  CalibrationResult out;
  out.method = CalibrationMethod::analytic;
  out.chi0 = chi0;
  out.omega = omega;
  out.tau = 2.0 * kPi / std::abs(omega);
  out.gamma_target = kPi * (1.0 - std::cos(chi0));
  out.residual_dynamic_phase =
      simulated_dynamic_phase(params, chi0, omega, cfg) -
      2.0 * kPi * n_periods;
  return out;
}

CalibrationResult numeric_zero_dynamic(const DeviceParams& params, double chi0,
                                       std::pair<double, double> bracket,
                                       const IntegratorConfig& cfg) {
  params.validate();
  if (!(chi0 > 0.0) || !(chi0 < kPi)) {
    throw std::domain_error("numeric_zero_dynamic: chi0 must lie in (0, pi)");
  }
  double lo = bracket.first;
  double hi = bracket.second;
  if (lo > hi) std::swap(lo, hi);
  if (lo == 0.0 || hi == 0.0 || (lo < 0.0) != (hi < 0.0)) {
    throw std::invalid_argument(
        "numeric_zero_dynamic: the bracket must not contain omega = 0");
  }

  auto f = [&](double w) { return simulated_dynamic_phase(params, chi0, w, cfg); };
  const double root = brent_root(f, lo, hi, 1e-13 * std::abs(hi), 1e-10);

  CalibrationResult out;
  out.method = CalibrationMethod::numeric;
  out.chi0 = chi0;
  out.omega = root;
  out.tau = 2.0 * kPi / std::abs(root);
  out.gamma_target = kPi * (1.0 - std::cos(chi0));
  out.residual_dynamic_phase = f(root);
  return out;
}

}  // namespace geoq
