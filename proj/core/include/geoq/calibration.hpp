// SPDX-License-Identifier: MIT
//
// Drive-frequency calibration for the rotating schedule: the signed omega
// that makes the dynamic phase over one period vanish, computed both from
// the closed form
//   omega = -4 (E1+E2) K[-4 E1 E2 / (E1-E2)^2] / (pi sin(2 chi0))
// (K the complete elliptic integral of the first kind in the parameter
// convention) and by root finding on the simulated dynamic phase.
#pragma once

#include <utility>

#include "geoq/ode.hpp"
#include "geoq/qubit.hpp"

namespace geoq {

/// Complete elliptic integral of the first kind,
///   K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta),
/// in the parameter convention (m, not the modulus k), for m < 1.
/// Negative m is handled with the imaginary-modulus transformation
///   K(-mu) = K(mu/(1+mu)) / sqrt(1+mu).
/// Computed by the arithmetic-geometric mean to ~1e-15 relative accuracy.
/// Throws std::domain_error for m >= 1.
double elliptic_k(double m);

/// Invert gamma = pi (1 - cos chi0) on gamma in [0, 2 pi].
double gamma_to_chi0(double gamma);

enum class CalibrationMethod { analytic, numeric };

struct CalibrationResult {
  double omega = 0.0;         ///< signed drive frequency, 1/tau0
  double tau = 0.0;           ///< period 2 pi / |omega|, tau0 units
  double chi0 = 0.0;          ///< cone angle, radians
  double gamma_target = 0.0;  ///< pi (1 - cos chi0)
  /// Simulated per-period dynamic phase at the returned omega (radians).
  double residual_dynamic_phase = 0.0;
  CalibrationMethod method = CalibrationMethod::analytic;
};

/// Closed-form calibration.  n_periods selects solutions whose dynamic
/// phase equals 2 pi n instead of zero (n = 0 reproduces the formula
/// above); for n != 0 the sign of omega is a free choice and the positive
/// branch is returned when both exist.
/// Throws std::domain_error when sin(2 chi0) vanishes (chi0 in {0, pi/2, pi})
/// or std::invalid_argument for a symmetric SQUID.
CalibrationResult omega_zero_dynamic(const DeviceParams& params, double chi0,
                                     int n_periods = 0,
                                     const IntegratorConfig& cfg = {});

/// Black-box calibration: Brent root finding on the simulated per-period
/// dynamic phase of the cyclic state, over a signed frequency bracket.
/// Converges to |residual| < 1e-8 rad.  Throws std::invalid_argument when
/// the bracket does not straddle a root.
CalibrationResult numeric_zero_dynamic(const DeviceParams& params, double chi0,
                                       std::pair<double, double> bracket,
                                       const IntegratorConfig& cfg = {});

/// Per-period dynamic phase of the exactly cyclic state of the rotating
/// drive at (chi0, omega), from a full simulation.  The calibration root
/// functions above drive this to (a multiple of 2 pi of) zero.
double simulated_dynamic_phase(const DeviceParams& params, double chi0,
                               double omega, const IntegratorConfig& cfg = {});

}  // namespace geoq
