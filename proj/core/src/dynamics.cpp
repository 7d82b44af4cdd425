// SPDX-License-Identifier: MIT
#include "geoq/dynamics.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace geoq {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Internal-unit field (energies divided by E1+E2) at time t.
struct ScaledField {
  const DeviceParams& params;
  const Schedule& sched;
  double scale;

  Eigen::Vector3d operator()(double t) const {
    const FieldVector f = schedule_field(params, sched, t);
    return {f.bx / scale, f.by / scale, f.bz / scale};
  }
};

std::vector<double> sample_grid(double tau, int count) {
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    ts[static_cast<std::size_t>(k)] = tau * static_cast<double>(k) /
                                      static_cast<double>(count - 1);
  }
  ts.back() = tau;
  return ts;
}

void fill_sample_metadata(Trajectory& traj, const DeviceParams& params,
                          const Schedule& sched,
                          const std::vector<double>& ts) {
  traj.params = params;
  traj.times = ts;
  traj.control.reserve(ts.size());
  traj.field.reserve(ts.size());
  for (const double t : ts) {
    traj.control.push_back(sched.at(t));
    traj.field.push_back(effective_field(params, traj.control.back()));
  }
}

}  // namespace

std::vector<double> uniform_samples(double duration, int count) {
  if (count < 2) throw std::invalid_argument("sample count must be >= 2");
  return sample_grid(duration, count);
}

Trajectory evolve_state(const DeviceParams& params, const Schedule& sched,
                        const SpinState& psi0, const IntegratorConfig& cfg) {
  params.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("evolve_state: psi0 is not normalized");
  }

  const double scale = params.ej_scale();
  const ScaledField field{params, sched, scale};
  const auto ts = sample_grid(sched.duration(), cfg.sample_count);

  Trajectory traj;
  fill_sample_metadata(traj, params, sched, ts);
  traj.states.resize(ts.size());
  traj.bloch.resize(ts.size());
  traj.h_expect.resize(ts.size());

  auto rhs = [&](double t, const Eigen::Vector2cd& psi) -> Eigen::Vector2cd {
    const Eigen::Vector3d b = field(t);
    // d psi/dt = (i/2) (B . sigma) psi in internal units.
    const std::complex<double> bxy{b(0), -b(1)};  // bx - i by
    return {0.5 * kI * (b(2) * psi(0) + bxy * psi(1)),
            0.5 * kI * (std::conj(bxy) * psi(0) - b(2) * psi(1))};
  };

  auto emit = [&](std::size_t idx, double /*t*/, const Eigen::Vector2cd& y) {
    const double n = std::sqrt(std::norm(y(0)) + std::norm(y(1)));
    traj.max_sample_drift = std::max(traj.max_sample_drift, std::abs(n - 1.0));
    traj.states[idx] = SpinState::from_vec(y / n);
  };

  double last_norm = 1.0;
  auto on_step = [&](double /*t*/, Eigen::Vector2cd& y, bool crossed_sample) {
    const double n = std::sqrt(std::norm(y(0)) + std::norm(y(1)));
    traj.max_step_drift =
        std::max(traj.max_step_drift, std::abs(n - last_norm));
    if (crossed_sample) {
      y /= n;
      last_norm = 1.0;
    } else {
      last_norm = n;
    }
  };

  integrate_dense(rhs, sched.breakpoints(),
                  std::span<const double>(ts.data(), ts.size()),
                  psi0.normalized().vec(), cfg, emit, on_step);

  for (std::size_t k = 0; k < ts.size(); ++k) {
    traj.bloch[k] = bloch_map(traj.states[k]);
    traj.h_expect[k] = hamiltonian_expectation(traj.field[k], traj.bloch[k]);
  }
  return traj;
}

Trajectory evolve_bloch(const DeviceParams& params, const Schedule& sched,
                        const BlochVector& n0, const IntegratorConfig& cfg) {
  params.validate();
  if (std::abs(n0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("evolve_bloch: n0 is not a unit vector");
  }

  const double scale = params.ej_scale();
  const ScaledField field{params, sched, scale};
  const auto ts = sample_grid(sched.duration(), cfg.sample_count);

  Trajectory traj;
  fill_sample_metadata(traj, params, sched, ts);
  traj.bloch.resize(ts.size());
  traj.h_expect.resize(ts.size());

  auto rhs = [&](double t, const Eigen::Vector3d& n) -> Eigen::Vector3d {
    return -field(t).cross(n);
  };

  auto emit = [&](std::size_t idx, double /*t*/, const Eigen::Vector3d& y) {
    const double n = y.norm();
    traj.max_sample_drift = std::max(traj.max_sample_drift, std::abs(n - 1.0));
    traj.bloch[idx] = {y(0) / n, y(1) / n, y(2) / n};
  };

  double last_norm = 1.0;
  auto on_step = [&](double /*t*/, Eigen::Vector3d& y, bool crossed_sample) {
    const double n = y.norm();
    traj.max_step_drift =
        std::max(traj.max_step_drift, std::abs(n - last_norm));
    if (crossed_sample) {
      y /= n;
      last_norm = 1.0;
    } else {
      last_norm = n;
    }
  };

  Eigen::Vector3d y0 = n0.vec() / n0.norm();
  integrate_dense(rhs, sched.breakpoints(),
                  std::span<const double>(ts.data(), ts.size()), y0, cfg, emit,
                  on_step);

  for (std::size_t k = 0; k < ts.size(); ++k) {
    traj.h_expect[k] = hamiltonian_expectation(traj.field[k], traj.bloch[k]);
  }
  return traj;
}

AdiabaticityTrace adiabaticity_trace(const Trajectory& traj) {
  if (traj.size() == 0 || traj.bloch.empty()) {
    throw std::invalid_argument("adiabaticity_trace: empty trajectory");
  }
  AdiabaticityTrace out;
  out.samples.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const FieldVector& f = traj.field[k];
    const double bn = f.norm();
    if (!(bn > 0.0)) {
      std::ostringstream os;
      os << "adiabaticity_trace: zero field at t=" << traj.times[k]
         << ", direction undefined";
      throw std::invalid_argument(os.str());
    }
    const BlochVector& n = traj.bloch[k];
    const double dx = n.nx - f.bx / bn;
    const double dy = n.ny - f.by / bn;
    const double dz = n.nz - f.bz / bn;
    AdiabaticitySample s;
    s.t = traj.times[k];
    s.nz = n.nz;
    s.bhat_z = f.bz / bn;
    s.deviation = std::sqrt(dx * dx + dy * dy + dz * dz);
    out.max_deviation = std::max(out.max_deviation, s.deviation);
    out.max_z_deviation = std::max(out.max_z_deviation, std::abs(dz));
    out.samples.push_back(s);
  }
  return out;
}

CyclicityResult cyclicity_check(const Trajectory& traj, double tol) {
  if (traj.bloch.empty()) return {true, 0.0};
  const BlochVector& a = traj.bloch.front();
  const BlochVector& b = traj.bloch.back();
  const double dx = b.nx - a.nx, dy = b.ny - a.ny, dz = b.nz - a.nz;
  const double res = std::sqrt(dx * dx + dy * dy + dz * dz);
  return {res < tol, res};
}

Eigen::Matrix2cd propagator(const DeviceParams& params, const Schedule& sched,
                            const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  c.sample_count = 2;  // endpoints only
  Eigen::Matrix2cd u;
  const Trajectory t0 = evolve_state(params, sched, SpinState{1.0, 0.0}, c);
  const Trajectory t1 = evolve_state(params, sched, SpinState{0.0, 1.0}, c);
  u.col(0) = t0.states.back().vec();
  u.col(1) = t1.states.back().vec();
  return u;
}

std::pair<SpinState, SpinState> cyclic_initial_states(
    const DeviceParams& params, const Schedule& sched,
    const IntegratorConfig& cfg) {
  const Eigen::Matrix2cd u = propagator(params, sched, cfg);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
  Eigen::Vector2cd v0 = es.eigenvectors().col(0).normalized();
  Eigen::Vector2cd v1 = es.eigenvectors().col(1).normalized();

  const FieldVector f0 = schedule_field(params, sched, 0.0);
  const double bn = f0.norm();
  if (!(bn > 0.0)) {
    throw std::invalid_argument("cyclic_initial_states: zero field at t=0");
  }
  const SpinState aligned =
      spin_from_bloch({f0.bx / bn, f0.by / bn, f0.bz / bn});
  const auto overlap = [&](const Eigen::Vector2cd& v) {
    return std::abs(aligned.vec().dot(v));
  };
  if (overlap(v1) > overlap(v0)) std::swap(v0, v1);
  return {SpinState::from_vec(v0), SpinState::from_vec(v1)};
}

}  // namespace geoq
