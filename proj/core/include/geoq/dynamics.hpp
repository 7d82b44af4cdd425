// SPDX-License-Identifier: MIT
//
// Time evolution along a schedule: the two-level Schrodinger equation
// i hbar d/dt psi = H(t) psi and the Bloch precession equation
// d/dt n = -B(t) x n / hbar.  Internally everything is scaled to
// hbar = 1, energies in (E1+E2), time in tau0.
#pragma once

#include <utility>
#include <vector>

#include "geoq/ode.hpp"
#include "geoq/qubit.hpp"
#include "geoq/schedule.hpp"

namespace geoq {

/// Time-sampled record of one evolution.  Fields are stored in interface
/// units (ueV); times in tau0.  `states` is empty for Bloch-only runs.
struct Trajectory {
  DeviceParams params;
  std::vector<double> times;
  std::vector<ControlPoint> control;
  std::vector<FieldVector> field;
  std::vector<SpinState> states;
  std::vector<BlochVector> bloch;
  std::vector<double> h_expect;  ///< <psi|H|psi> per sample, ueV

  /// Worst per-step norm defect observed while integrating.
  double max_step_drift = 0.0;
  /// Worst norm defect found at a sample point before renormalization.
  double max_sample_drift = 0.0;

  std::size_t size() const { return times.size(); }
  double duration() const { return times.empty() ? 0.0 : times.back(); }
};

/// Integrate the Schrodinger equation from psi0.  Samples are uniform over
/// [0, duration]; the state is renormalized whenever a sample point has
/// been crossed (not every internal step), recording the drift.
Trajectory evolve_state(const DeviceParams& params, const Schedule& sched,
                        const SpinState& psi0, const IntegratorConfig& cfg = {});

/// Integrate the Bloch precession equation from n0.  `states` stays empty;
/// h_expect is filled from -(1/2) B . n.
Trajectory evolve_bloch(const DeviceParams& params, const Schedule& sched,
                        const BlochVector& n0, const IntegratorConfig& cfg = {});

struct AdiabaticitySample {
  double t = 0.0;
  double nz = 0.0;
  double bhat_z = 0.0;
  double deviation = 0.0;  ///< |n - Bhat|
};

struct AdiabaticityTrace {
  std::vector<AdiabaticitySample> samples;
  double max_deviation = 0.0;    ///< max |n - Bhat|
  double max_z_deviation = 0.0;  ///< max |n_z - Bhat_z|
};

/// Per-sample comparison of the Bloch vector with the field direction.
/// Throws std::invalid_argument on an empty trajectory or a zero-field
/// sample (direction undefined), naming its time.
AdiabaticityTrace adiabaticity_trace(const Trajectory& traj);

struct CyclicityResult {
  bool cyclic = false;
  double residual = 0.0;  ///< |n(tau) - n(0)|
};

CyclicityResult cyclicity_check(const Trajectory& traj, double tol);

/// The pair of initial states that evolve exactly cyclically over the
/// schedule: eigenvectors of the period propagator U(tau), returned with
/// the one closer to the field direction at t = 0 first.  For the rotating
/// drive this reproduces the spinors at cone angles (chi0, pi - chi0).
std::pair<SpinState, SpinState> cyclic_initial_states(
    const DeviceParams& params, const Schedule& sched,
    const IntegratorConfig& cfg = {});

/// Period propagator U(duration) obtained by evolving both basis states.
Eigen::Matrix2cd propagator(const DeviceParams& params, const Schedule& sched,
                            const IntegratorConfig& cfg = {});

}  // namespace geoq
