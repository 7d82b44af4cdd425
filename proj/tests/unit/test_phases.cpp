// SPDX-License-Identifier: MIT
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "geoq/calibration.hpp"
#include "geoq/dynamics.hpp"
#include "geoq/numerics.hpp"
#include "geoq/phases.hpp"

using namespace geoq;

namespace {

constexpr double kPi = std::numbers::pi;
const DeviceParams kDev{1.5625, 6.25, 39.0625};

// Synthetic trajectory from an analytic Bloch path n(t) and a field B(t)
// consistent with it through the precession equation.  States are the
// parameterized spinors (their global phase is irrelevant for the path
// functionals under test).
Trajectory synthetic(const DeviceParams& params, int samples, double tau,
                     const std::function<BlochVector(double)>& path,
                     const std::function<FieldVector(double)>& field) {
  Trajectory traj;
  traj.params = params;
  traj.times = uniform_samples(tau, samples);
  for (const double t : traj.times) {
    const BlochVector n = path(t);
    const FieldVector f = field(t);
    traj.bloch.push_back(n);
    traj.field.push_back(f);
    traj.states.push_back(spin_from_bloch(n));
    traj.control.push_back({0.0, 0.0});
    traj.h_expect.push_back(hamiltonian_expectation(f, n));
  }
  return traj;
}

}  // namespace

TEST_CASE("total phase of a stationary eigenstate and its error path") {
  const DeviceParams dev{2.0, 2.0, 10.0};
  const Schedule s = constant_schedule(0.5, 0.2, 4.0);
  const double bz_int = schedule_field(dev, s, 0.0).bz / dev.ej_scale();
  const Trajectory traj = evolve_state(dev, s, SpinState{1.0, 0.0});
  CHECK(total_phase(traj) ==
        doctest::Approx(wrap_angle(0.5 * bz_int * 4.0)).epsilon(1e-9));

  // psi(tau) == psi(0) gives zero.
  Trajectory loop = traj;
  loop.states.back() = loop.states.front();
  CHECK(total_phase(loop) == doctest::Approx(0.0));

  // Orthogonal endpoints are rejected.
  Trajectory orth = traj;
  orth.states.front() = SpinState{1.0, 0.0};
  orth.states.back() = SpinState{0.0, 1.0};
  CHECK_THROWS_AS(total_phase(orth), std::domain_error);
}

TEST_CASE("dynamic phase: eigenstate value, orthogonal field, closed form") {
  const DeviceParams dev{2.0, 2.0, 10.0};
  const Schedule s = constant_schedule(0.5, 0.2, 4.0);
  const double bz_int = schedule_field(dev, s, 0.0).bz / dev.ej_scale();
  const Trajectory traj = evolve_state(dev, s, SpinState{1.0, 0.0});
  // <H> = -B/2 for the aligned state: dynamic phase +B tau / (2 hbar).
  CHECK(dynamic_phase(traj) == doctest::Approx(0.5 * bz_int * 4.0).epsilon(1e-9));

  // Field everywhere orthogonal to n: zero dynamic phase.
  const Trajectory perp = synthetic(
      kDev, 513, 2.0,
      [](double t) { return BlochVector{std::cos(t), std::sin(t), 0.0}; },
      [&](double) { return FieldVector{0.0, 0.0, -kDev.ej_scale()}; });
  CHECK(dynamic_phase(perp) == doctest::Approx(0.0).epsilon(1e-12));

  // Rotating drive on the cyclic cone state: closed form through the
  // complete elliptic integral,
  //   int E_J dt / (2 hbar sin chi0) + pi cos(chi0) sign(omega).
  const double chi0 = 2.0 * kPi / 3.0;
  for (const double omega : {1.7601, -0.9}) {
    const Schedule sii = process_ii(kDev, {chi0, omega});
    const Trajectory t2 = evolve_state(kDev, sii, SpinState::from_angles(chi0, 0.0));
    const double m =
        -4.0 * kDev.e1 * kDev.e2 / ((kDev.e1 - kDev.e2) * (kDev.e1 - kDev.e2));
    const double int_ej = 4.0 * elliptic_k(m) / std::abs(omega);  // internal units
    const double closed = int_ej / (2.0 * std::sin(chi0)) +
                          kPi * std::cos(chi0) * (omega > 0 ? 1.0 : -1.0);
    CHECK(dynamic_phase(t2) == doctest::Approx(closed).epsilon(1e-8));
  }
}

TEST_CASE("cyclic geometric phase equals pi (1 - cos chi0) with traversal sign") {
  for (const double chi0 : {kPi / 6, std::acos(0.25), kPi / 3, 2.0 * kPi / 3}) {
    for (const double omega : {0.8, -1.3}) {
      const Schedule s = process_ii(kDev, {chi0, omega});
      const Trajectory traj =
          evolve_state(kDev, s, SpinState::from_angles(chi0, 0.0));
      const double s_dir = omega > 0 ? 1.0 : -1.0;
      const double target = wrap_angle(s_dir * kPi * (1.0 - std::cos(chi0)));
      CHECK(wrap_angle(geometric_phase_cyclic(traj) - target) ==
            doctest::Approx(0.0).epsilon(1e-6));
    }
  }

  // chi0 -> 0 degenerates to zero phase; chi0 = pi/2 gives half the sphere.
  const Schedule tiny = process_ii(kDev, {1e-4, 1.0});
  const Trajectory t0 = evolve_state(kDev, tiny, SpinState::from_angles(1e-4, 0.0));
  CHECK(std::abs(geometric_phase_cyclic(t0)) < 1e-6);
  const Schedule eq = process_ii(kDev, {kPi / 2, 1.0});
  const Trajectory t1 = evolve_state(kDev, eq, SpinState::from_angles(kPi / 2, 0.0));
  CHECK(wrap_angle(geometric_phase_cyclic(t1) - kPi) ==
        doctest::Approx(0.0).epsilon(1e-6));

  // Non-cyclic trajectories are rejected.
  const Schedule c = constant_schedule(0.0, 0.3, 1.234);
  const Trajectory nc = evolve_state(kDev, c, SpinState{1.0, 0.0});
  CHECK_THROWS_AS(geometric_phase_cyclic(nc), std::domain_error);
}

TEST_CASE("path line integral on closed and open analytic paths") {
  // Closed constant-theta loop, azimuth 0 -> 2 pi: gamma = -pi (1 - cos theta).
  const double theta = 0.8;
  const double tau = 2.0 * kPi;
  const Trajectory loop = synthetic(
      kDev, 4097, tau,
      [&](double t) { return BlochVector::from_angles(theta, t); },
      // phi advances at +1: B = -hbar z-hat in internal units.
      [&](double) { return FieldVector{0.0, 0.0, -kDev.ej_scale()}; });
  CHECK(pancharatnam_line_integral(loop) ==
        doctest::Approx(-kPi * (1.0 - std::cos(theta))).epsilon(1e-9));

  // Open meridian path: no azimuth change, closure term zero.
  const Trajectory meridian = synthetic(
      kDev, 1025, 1.0,
      [](double t) { return BlochVector::from_angles(0.3 + t, 0.0); },
      [&](double) { return FieldVector{0.0, -kDev.ej_scale(), 0.0}; });
  CHECK(pancharatnam_line_integral(meridian) == doctest::Approx(0.0).epsilon(1e-10));

  // Rotating drive: +/- pi (1 - cos chi0), unwrapped, winding recorded.
  const double chi0 = 2.0 * kPi / 3.0;
  const Schedule s = process_ii(kDev, {chi0, 1.7601});
  const Trajectory traj = evolve_state(kDev, s, SpinState::from_angles(chi0, 0.0));
  const double line = pancharatnam_line_integral(traj);
  CHECK(line == doctest::Approx(kPi * 1.5).epsilon(1e-7));
  const PhaseDecomposition dec =
      phase_decomposition(traj, PhaseMethod::line_integral);
  CHECK(dec.winding == 1);
  CHECK(dec.geometric == doctest::Approx(wrap_angle(1.5 * kPi)).epsilon(1e-7));

  const Schedule sneg = process_ii(kDev, {chi0, -1.7601});
  const Trajectory tneg = evolve_state(kDev, sneg, SpinState::from_angles(chi0, 0.0));
  CHECK(pancharatnam_line_integral(tneg) == doctest::Approx(-kPi * 1.5).epsilon(1e-7));
}

TEST_CASE("decomposition consistency for both cyclic branches") {
  const double chi0 = std::acos(0.25);
  const Schedule s = process_ii(kDev, {chi0, 1.1});
  const auto [plus, minus] = cyclic_initial_states(kDev, s);
  for (const SpinState& psi0 : {plus, minus}) {
    const Trajectory traj = evolve_state(kDev, s, psi0);
    const double overlap_route = geometric_phase_cyclic(traj);
    const double line_route = wrap_angle(pancharatnam_line_integral(traj));
    CHECK(wrap_angle(overlap_route - line_route) ==
          doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("gauge transformation shifts total and dynamic but not geometric") {
  const double chi0 = 1.2;
  const Schedule s = process_ii(kDev, {chi0, 0.9});
  const Trajectory traj = evolve_state(kDev, s, SpinState::from_angles(chi0, 0.0));
  const double base_geo = total_phase(traj) - dynamic_phase(traj);
  const double base_line = pancharatnam_line_integral(traj);

  // psi'(t) = e^{i lambda(t)} psi(t) with lambda(tau) = lambda(0) + 2 pi
  // (a winding gauge) solves the equation for H' = H - hbar lambda_dot; in
  // interface units the <H> samples shift by -lambda_dot (E1+E2).  The
  // dynamic phase then shifts by a full turn while the wrapped geometric
  // phase stays put.
  const double tau = s.duration();
  Trajectory gauged = traj;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    const double x = 2.0 * kPi * t / tau;
    const double lam = x + 0.4 * std::sin(x);
    const double lam_dot = (2.0 * kPi / tau) * (1.0 + 0.4 * std::cos(x));
    const std::complex<double> ph = std::exp(std::complex<double>(0.0, lam));
    gauged.states[k].amp0 *= ph;
    gauged.states[k].amp1 *= ph;
    gauged.h_expect[k] -= lam_dot * kDev.ej_scale();
  }
  CHECK(pancharatnam_line_integral(gauged) == doctest::Approx(base_line));
  CHECK(wrap_angle((total_phase(gauged) - dynamic_phase(gauged)) - base_geo) ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(dynamic_phase(gauged) - dynamic_phase(traj) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-9));
}

TEST_CASE("line integral refuses undersampled or south-pole paths") {
  // 5 samples over a full loop: azimuth steps of pi/2 are ambiguous.
  const Trajectory sparse = synthetic(
      kDev, 5, 2.0 * kPi,
      [](double t) { return BlochVector::from_angles(1.0, t); },
      [&](double) { return FieldVector{0.0, 0.0, -kDev.ej_scale()}; });
  CHECK_THROWS_AS(pancharatnam_line_integral(sparse), std::domain_error);

  const Trajectory south = synthetic(
      kDev, 257, 1.0,
      [](double t) { return BlochVector::from_angles(kPi * t, 0.0); },
      [&](double) { return FieldVector{0.0, -kDev.ej_scale(), 0.0}; });
  CHECK_THROWS_AS(pancharatnam_line_integral(south), std::domain_error);
}

TEST_CASE("solid angle: analytic loops, degenerate loop, regression value") {
  // Constant-cone field loop built as a dense tabulated schedule:
  // bz(t) = E_J(flux) cot(theta_B) keeps the field polar angle fixed.
  const double theta_b = 0.7;
  {
    std::ostringstream os;
    os.precision(17);
    os << "t,flux,gate_charge\n";
    const int rows = 4001;
    for (int k = 0; k < rows; ++k) {
      const double x = static_cast<double>(k) / (rows - 1);
      const double flux = 2.0 * x;
      const double bz = josephson_energy(kDev, flux) / std::tan(theta_b);
      os << 10.0 * x << "," << flux << "," << 0.5 * (1.0 - bz / kDev.ech) << "\n";
    }
    const Schedule loop = parse_tabulated(os.str());
    CHECK(loop.is_closed());
    IntegratorConfig cfg;
    cfg.sample_count = 129;
    const double omega_loop = solid_angle(kDev, loop, cfg);
    CHECK(omega_loop ==
          doctest::Approx(2.0 * kPi * (1.0 - std::cos(theta_b))).epsilon(2e-4));
    CHECK(adiabatic_phase(kDev, loop, cfg) ==
          doctest::Approx(-kPi * (1.0 - std::cos(theta_b))).epsilon(2e-4));
  }

  // Degenerate rectangle (phi_m = 0) has no area.
  CHECK(solid_angle(kDev, process_i({0.0, 0.2, 10.0})) == doctest::Approx(0.0));

  // Frozen quadrature value for the reference rectangle loop.
  CHECK(solid_angle(kDev, process_i({0.25, 0.20, 500.0})) ==
        doctest::Approx(0.516020694321).epsilon(1e-8));

  // Open schedules are rejected.
  const Schedule open_sched =
      parse_tabulated("t,flux,gate_charge\n0,0,0.5\n1,0.3,0.4\n");
  CHECK_THROWS_AS(solid_angle(kDev, open_sched), std::domain_error);
}

TEST_CASE("solid angle is additive over a split of the loop") {
  const Schedule loop = process_i({0.25, 0.20, 40.0});
  const double full = solid_angle(kDev, loop);
  const double att = 17.3;
  const double part1 = solid_angle_open(kDev, loop, 0.0, att);
  const double part2 = solid_angle_open(kDev, loop, att, 40.0);
  CHECK(part1 + part2 == doctest::Approx(full).epsilon(1e-10));
}

TEST_CASE("solid angle is invariant under time reparameterization") {
  // The same rectangle traversed with a warped clock.
  const Schedule uniform = process_i({0.25, 0.20, 10.0});
  std::ostringstream os;
  os.precision(17);
  os << "t,flux,gate_charge\n";
  const int rows = 8001;
  for (int k = 0; k < rows; ++k) {
    const double x = static_cast<double>(k) / (rows - 1);
    const double warped = 10.0 * (0.3 * x + 0.7 * x * x);
    const ControlPoint cp = uniform.at(10.0 * x);
    os << warped << "," << cp.flux << "," << cp.gate_charge << "\n";
  }
  const Schedule warped = parse_tabulated(os.str());
  IntegratorConfig cfg;
  cfg.sample_count = 129;
  CHECK(solid_angle(kDev, warped, cfg) ==
        doctest::Approx(solid_angle(kDev, uniform)).epsilon(1e-6));
}

TEST_CASE("adiabatic phase approaches the cyclic phase as omega -> 0") {
  const double chi0 = 2.0 * kPi / 3.0;
  const double gamma = kPi * (1.0 - std::cos(chi0));
  const Schedule slow = process_ii(kDev, {chi0, 1e-3});
  CHECK(std::abs(adiabatic_phase(kDev, slow) - gamma) < 0.01);
  const Schedule fast = process_ii(kDev, {chi0, 2.0 * kPi / 100.0});
  CHECK(std::abs(adiabatic_phase(kDev, fast) - gamma) >
        5.0 * std::abs(adiabatic_phase(kDev, slow) - gamma));
}

TEST_CASE("noncyclic decomposition requires the explicit flag") {
  const Schedule c = constant_schedule(0.0, 0.3, 1.234);
  const Trajectory nc = evolve_state(kDev, c, SpinState{1.0, 0.0});
  CHECK_THROWS_AS(phase_decomposition(nc, PhaseMethod::overlap_minus_dynamic),
                  std::domain_error);
  const PhaseDecomposition dec =
      phase_decomposition(nc, PhaseMethod::overlap_minus_dynamic, true);
  const PhaseDecomposition decl =
      phase_decomposition(nc, PhaseMethod::line_integral, true);
  CHECK(wrap_angle(dec.geometric - decl.geometric) ==
        doctest::Approx(0.0).epsilon(1e-6));
}
