// SPDX-License-Identifier: MIT
//
// Capacitively coupled control/target pair.  The coupling term is
//   E_c (n_i - nx_i)(n_j - nx_j)  with n = diag(0, 1) per qubit,
// which shifts the target's z-field by E_c (l - nx_i) when the control
// charge state is l.  Per-l rotating schedules compensated for that shift
// keep the conditional cone angle chi0^l exactly constant.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "geoq/dynamics.hpp"
#include "geoq/ode.hpp"
#include "geoq/qubit.hpp"
#include "geoq/schedule.hpp"

namespace geoq {

struct CouplingParams {
  /// Coupling energy E_c = Ech * C_c / C, ueV.  Intended regime E_c << Ech.
  double e_coupling = 0.0;

  void validate() const;
};

/// Fictitious field on the target with the control frozen in charge state
/// l: transverse components as in the uncoupled device, z-component
/// shifted by E_c (l - nx_i).
FieldVector conditional_field(const DeviceParams& params_j, const ControlPoint& cp_j,
                              const CouplingParams& coupling, double nx_i, int l);

/// Conditional cone angle of the rotating drive designed at chi0:
///   cot(chi0^l) = cot(chi0) + E_c (l - nx_i) / (E1 + E2).
double conditional_chi0(const DeviceParams& params_j, double chi0,
                        const CouplingParams& coupling, double nx_i, int l);

/// Target schedule compensated for the control-l bias, so that
/// chi(t) = atan2(E_J, B_z^l - hbar omega) stays at chi0^l for all t.
Schedule conditional_process_ii(const DeviceParams& params_j,
                                const ProcessIIParams& p,
                                const CouplingParams& coupling, double nx_i, int l);

/// Closed-form conditional geometric phase pi (1 - cos chi0^l) for one
/// cycle (mod 2 pi, oriented by the traversal sign of omega).
double conditional_phase(const DeviceParams& params_j, const ProcessIIParams& p,
                         const CouplingParams& coupling, double nx_i, int l);

enum class ControlMode {
  literal,  ///< control evolves under its own full field
  frozen,   ///< control transverse field zeroed (exact conditional reduction)
};

/// Four-amplitude record of a coupled evolution on {|00>,|01>,|10>,|11>}.
struct TwoQubitTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector4cd> states;
  double max_step_drift = 0.0;
  double max_sample_drift = 0.0;

  std::size_t size() const { return times.size(); }
};

/// Integrate the coupled Hamiltonian
///   H = H_i (x) I + I (x) H_j + E_c (n - nx_i(t)) (x) (n - nx_j(t)).
/// Schedules must share one duration.  psi0 must be normalized.
TwoQubitTrajectory full_two_qubit_evolve(
    const DeviceParams& params_i, const DeviceParams& params_j,
    const Schedule& sched_i, const Schedule& sched_j,
    const CouplingParams& coupling, const Eigen::Vector4cd& psi0,
    const IntegratorConfig& cfg = {}, ControlMode mode = ControlMode::literal);

/// The coupled 4x4 Hamiltonian at one instant, in ueV.
Eigen::Matrix4cd coupled_hamiltonian(const DeviceParams& params_i,
                                     const DeviceParams& params_j,
                                     const ControlPoint& cp_i,
                                     const ControlPoint& cp_j,
                                     const CouplingParams& coupling,
                                     ControlMode mode = ControlMode::literal);

}  // namespace geoq
