// SPDX-License-Identifier: MIT
//
// Phase extraction from trajectories: total (overlap) phase, dynamic phase
// -(1/hbar) int <H> dt, the cyclic geometric (Aharonov-Anandan) phase, the
// open-path geometric phase from the Bloch path, and the field-loop solid
// angle with its adiabatic (Berry) phase.
#pragma once

#include "geoq/dynamics.hpp"
#include "geoq/ode.hpp"
#include "geoq/qubit.hpp"
#include "geoq/schedule.hpp"

namespace geoq {

enum class PhaseMethod { overlap_minus_dynamic, line_integral };

struct PhaseDecomposition {
  double total = 0.0;      ///< arg<psi(0)|psi(tau)>, wrapped to (-pi, pi]
  double dynamic = 0.0;    ///< -(1/hbar) int <H> dt, unwrapped
  double geometric = 0.0;  ///< wrapped to (-pi, pi]
  int winding = 0;         ///< geometric + 2 pi winding = unwrapped path value
  PhaseMethod method = PhaseMethod::overlap_minus_dynamic;
};

/// arg<psi(0)|psi(tau)> in (-pi, pi].  Throws std::domain_error when the
/// endpoint states are (numerically) orthogonal and the phase is undefined.
double total_phase(const Trajectory& traj);

/// -(1/hbar) int <H> dt by composite Simpson over the trajectory samples.
double dynamic_phase(const Trajectory& traj);

/// Geometric phase of the Bloch path:
///   -(1/2) int (1 - cos theta) dphi  +  closure term
/// with the azimuth unwrapped along the path and the closure term
///   atan2(sin(dphi_f), cot(theta_f/2) cot(theta_i/2) + cos(dphi_f))
/// from the endpoint angles (zero for a closed path).  The first term is
/// integrated in time with the exact path velocity n' = -B x n / hbar, so
/// the returned value is unwrapped (winding included).
///
/// Preconditions: consecutive azimuth increments below pi/2 (raise
/// sample_count otherwise); paths through the exact south pole of the
/// Bloch sphere are rejected (the connection is singular there).
double pancharatnam_line_integral(const Trajectory& traj);

/// total - dynamic, wrapped to (-pi, pi].  Requires a cyclic trajectory
/// (Bloch residual below 1e-5); throws std::domain_error otherwise.
double geometric_phase_cyclic(const Trajectory& traj);

/// Full decomposition by either method.  Unless allow_noncyclic is set,
/// non-cyclic trajectories are rejected with guidance; when it is set the
/// open-path closure term enters the line integral and the overlap route
/// reports the Pancharatnam geometric phase of the open path.
PhaseDecomposition phase_decomposition(const Trajectory& traj,
                                       PhaseMethod method,
                                       bool allow_noncyclic = false);

/// Solid angle swept by the field loop:
///   int_0^tau (Bx By' - By Bx') / (|B| (Bz + |B|)) dt
/// by composite Simpson per smooth segment with analytic field rates.
/// The schedule must be closed and the field must stay off the ray
/// Bz = -|B| (throws naming the time otherwise).  Eigenstates following
/// the field acquire Berry phases -/+ solid_angle/2.
double solid_angle(const DeviceParams& params, const Schedule& sched,
                   const IntegratorConfig& cfg = {});

/// The same line integral over a sub-interval [t0, t1] of the schedule,
/// without the closure requirement.  Pieces add up to the closed-loop value.
double solid_angle_open(const DeviceParams& params, const Schedule& sched,
                        double t0, double t1, const IntegratorConfig& cfg = {});

/// Adiabatic-approximation phase of the field-aligned branch: -Omega/2.
double adiabatic_phase(const DeviceParams& params, const Schedule& sched,
                       const IntegratorConfig& cfg = {});

}  // namespace geoq
