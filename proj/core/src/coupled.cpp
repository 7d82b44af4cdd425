// SPDX-License-Identifier: MIT
#include "geoq/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace geoq {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// kron(a, b) for 2x2 blocks.
Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  out.block<2, 2>(0, 0) = a(0, 0) * b;
  out.block<2, 2>(0, 2) = a(0, 1) * b;
  out.block<2, 2>(2, 0) = a(1, 0) * b;
  out.block<2, 2>(2, 2) = a(1, 1) * b;
  return out;
}

Eigen::Matrix2cd charge_operator() {
  Eigen::Matrix2cd n = Eigen::Matrix2cd::Zero();
  n(1, 1) = 1.0;
  return n;
}

}  // namespace

void CouplingParams::validate() const {
  if (!(e_coupling >= 0.0) || !std::isfinite(e_coupling)) {
    throw std::invalid_argument("coupling energy must be finite and >= 0");
  }
}

FieldVector conditional_field(const DeviceParams& params_j, const ControlPoint& cp_j,
                              const CouplingParams& coupling, double nx_i, int l) {
  if (l != 0 && l != 1) {
    throw std::invalid_argument("conditional_field: control state l must be 0 or 1");
  }
  coupling.validate();
  FieldVector f = effective_field(params_j, cp_j);
  f.bz += coupling.e_coupling * (static_cast<double>(l) - nx_i);
  return f;
}

double conditional_chi0(const DeviceParams& params_j, double chi0,
                        const CouplingParams& coupling, double nx_i, int l) {
  if (!(chi0 > 0.0) || !(chi0 < std::numbers::pi)) {
    throw std::domain_error("conditional_chi0: chi0 must lie in (0, pi)");
  }
  const double cot_l = 1.0 / std::tan(chi0) +
                       coupling.e_coupling * (static_cast<double>(l) - nx_i) /
                           params_j.ej_scale();
  return std::atan2(1.0, cot_l);
}

Schedule conditional_process_ii(const DeviceParams& params_j,
                                const ProcessIIParams& p,
                                const CouplingParams& coupling, double nx_i, int l) {
  const double chi_l = conditional_chi0(params_j, p.chi0, coupling, nx_i, l);
  const double bias = coupling.e_coupling * (static_cast<double>(l) - nx_i);
  return process_ii(params_j, ProcessIIParams{chi_l, p.omega}, bias);
}

double conditional_phase(const DeviceParams& params_j, const ProcessIIParams& p,
                         const CouplingParams& coupling, double nx_i, int l) {
  const double chi_l = conditional_chi0(params_j, p.chi0, coupling, nx_i, l);
  return std::numbers::pi * (1.0 - std::cos(chi_l));
}

Eigen::Matrix4cd coupled_hamiltonian(const DeviceParams& params_i,
                                     const DeviceParams& params_j,
                                     const ControlPoint& cp_i,
                                     const ControlPoint& cp_j,
                                     const CouplingParams& coupling,
                                     ControlMode mode) {
  FieldVector fi = effective_field(params_i, cp_i);
  if (mode == ControlMode::frozen) {
    fi.bx = 0.0;
    fi.by = 0.0;
  }
  const FieldVector fj = effective_field(params_j, cp_j);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd n = charge_operator();
  const Eigen::Matrix2cd ci = n - cp_i.gate_charge * id;
  const Eigen::Matrix2cd cj = n - cp_j.gate_charge * id;
  return kron2(hamiltonian(fi), id) + kron2(id, hamiltonian(fj)) +
         coupling.e_coupling * kron2(ci, cj);
}

TwoQubitTrajectory full_two_qubit_evolve(
    const DeviceParams& params_i, const DeviceParams& params_j,
    const Schedule& sched_i, const Schedule& sched_j,
    const CouplingParams& coupling, const Eigen::Vector4cd& psi0,
    const IntegratorConfig& cfg, ControlMode mode) {
  params_i.validate();
  params_j.validate();
  coupling.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("full_two_qubit_evolve: psi0 is not normalized");
  }
  const double tau = sched_j.duration();
  if (std::abs(sched_i.duration() - tau) > 1e-12 * std::max(1.0, tau)) {
    throw std::invalid_argument(
        "full_two_qubit_evolve: control and target schedules must share one "
        "duration");
  }

  // Times in the target's tau0; the whole Hamiltonian is scaled by the
  // target's E1+E2.
  const double scale = params_j.ej_scale();

  std::vector<double> breaks = sched_i.breakpoints();
  breaks.insert(breaks.end(), sched_j.breakpoints().begin(),
                sched_j.breakpoints().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto ts = uniform_samples(tau, cfg.sample_count);

  TwoQubitTrajectory traj;
  traj.times = ts;
  traj.states.resize(ts.size());

  auto rhs = [&](double t, const Eigen::Vector4cd& psi) -> Eigen::Vector4cd {
    const Eigen::Matrix4cd h =
        coupled_hamiltonian(params_i, params_j, sched_i.at(t), sched_j.at(t),
                            coupling, mode) /
        scale;
    return -kI * (h * psi);
  };

  auto emit = [&](std::size_t idx, double /*t*/, const Eigen::Vector4cd& y) {
    const double n = y.norm();
    traj.max_sample_drift = std::max(traj.max_sample_drift, std::abs(n - 1.0));
    traj.states[idx] = y / n;
  };

  double last_norm = 1.0;
  auto on_step = [&](double /*t*/, Eigen::Vector4cd& y, bool crossed_sample) {
    const double n = y.norm();
    traj.max_step_drift = std::max(traj.max_step_drift, std::abs(n - last_norm));
    if (crossed_sample) {
      y /= n;
      last_norm = 1.0;
    } else {
      last_norm = n;
    }
  };

  Eigen::Vector4cd y0 = psi0 / psi0.norm();
  integrate_dense(rhs, std::span<const double>(breaks.data(), breaks.size()),
                  std::span<const double>(ts.data(), ts.size()), y0, cfg, emit,
                  on_step);
  return traj;
}

}  // namespace geoq
