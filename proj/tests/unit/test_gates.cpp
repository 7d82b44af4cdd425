// SPDX-License-Identifier: MIT
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "geoq/calibration.hpp"
#include "geoq/dynamics.hpp"
#include "geoq/gates.hpp"

using namespace geoq;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};
const DeviceParams kDev{1.5625, 6.25, 39.0625};
}  // namespace

TEST_CASE("u1 gate values") {
  const Unitary2 flip = u1_sq(kPi / 2);
  CHECK(std::abs(flip(0, 0)) < 1e-15);
  CHECK(std::abs(flip(0, 1) - kI) < 1e-15);
  CHECK(std::abs(flip(1, 0) - kI) < 1e-15);

  CHECK((u1_sq(0.0) - Unitary2::Identity()).norm() < 1e-15);

  // gamma = pi/4 sends |0> to an equal-weight superposition.
  const Eigen::Vector2cd out = u1_sq(kPi / 4) * Eigen::Vector2cd(1.0, 0.0);
  CHECK(std::abs(out(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(out(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("u2 gate values and its cyclic-gate equivalence") {
  const Unitary2 z = u2_sq(kPi / 2);
  CHECK(std::abs(z(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(z(1, 1) + 1.0) < 1e-15);
  CHECK((u2_sq(0.0) - Unitary2::Identity()).norm() < 1e-15);

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> g(-2.0 * kPi, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const double gamma = g(rng);
    const Unitary2 lhs = u2_sq(gamma);
    const Unitary2 rhs = std::exp(-kI * gamma) * cyclic_gate(gamma, 0.0, 0.0);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("cyclic gate axis structure") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> g(-kPi, kPi), th(0.0, kPi), ph(-kPi, kPi);

  // Equatorial axis reproduces the u1 matrix exactly.
  for (int i = 0; i < 50; ++i) {
    const double gamma = g(rng);
    CHECK((cyclic_gate(gamma, kPi / 2, 0.0) - u1_sq(gamma)).norm() < 1e-14);
  }
  // Polar axis gives the diagonal phase pair.
  const Unitary2 d = cyclic_gate(0.7, 0.0, 0.0);
  CHECK(std::abs(d(0, 0) - std::exp(kI * 0.7)) < 1e-15);
  CHECK(std::abs(d(1, 1) - std::exp(-kI * 0.7)) < 1e-15);
  // gamma = pi is -identity on any axis.
  CHECK((cyclic_gate(kPi, 1.1, 0.4) + Unitary2::Identity()).norm() < 1e-13);

  for (int i = 0; i < 200; ++i) {
    const double gamma = g(rng), theta = th(rng), phi = ph(rng);
    const Unitary2 u = cyclic_gate(gamma, theta, phi);
    CHECK(is_unitary(u, 1e-10));
    // Spectral content: eigenphases +/- gamma on the basis spinors.
    const SpinState plus = SpinState::from_angles(theta, phi);
    const Eigen::Vector2cd applied = u * plus.vec();
    CHECK(std::abs(applied.dot(applied) - 1.0) < 1e-12);
    const std::complex<double> expect = std::exp(kI * gamma);
    CHECK(std::abs(plus.vec().dot(applied) - expect) < 1e-12);
  }
}

TEST_CASE("conditional gate diagonal") {
  const Unitary4 x = conditional_gate(0.0, 1.5 * kPi);
  CHECK(std::abs(x(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(x(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(x(2, 2) - kI) < 1e-15);
  CHECK(std::abs(x(3, 3) + kI) < 1e-15);
  CHECK((conditional_gate(0.0, 0.0) - Unitary4::Identity()).norm() < 1e-15);

  // Equal phases factor into I (x) diag(e^{-ig}, e^{ig}).
  const double gamma = 0.9;
  const Unitary4 eq = conditional_gate(gamma, gamma);
  Eigen::Matrix2cd blk = eq.block<2, 2>(0, 0);
  CHECK((eq.block<2, 2>(2, 2) - blk).norm() < 1e-15);
}

TEST_CASE("xor composition equals cnot up to conditional phases") {
  const Unitary4 x = xor_compose();
  CHECK(is_unitary(x, 1e-13));

  // Control-0 block is the identity: |00> and |01> are fixed.
  CHECK((x.block<2, 2>(0, 0) - Eigen::Matrix2cd::Identity()).norm() < 1e-13);
  CHECK(x.block<2, 2>(0, 2).norm() < 1e-13);
  CHECK(x.block<2, 2>(2, 0).norm() < 1e-13);

  // Control-1 block is [[0,1],[-1,0]].
  Eigen::Matrix2cd c1 = x.block<2, 2>(2, 2);
  CHECK(std::abs(c1(0, 0)) < 1e-13);
  CHECK(std::abs(c1(0, 1) - 1.0) < 1e-13);
  CHECK(std::abs(c1(1, 0) + 1.0) < 1e-13);
  CHECK(std::abs(c1(1, 1)) < 1e-13);

  // Brute-force product oracle.
  const Unitary2 v = u1_sq(kPi / 4);
  Unitary4 lift = Unitary4::Zero();
  lift.block<2, 2>(0, 0) = v;
  lift.block<2, 2>(2, 2) = v;
  const Unitary4 oracle = lift * conditional_gate(0.0, 1.5 * kPi) * lift.adjoint();
  CHECK((x - oracle).norm() < 1e-14);

  // Entrywise moduli match CNOT exactly.
  const Unitary4 ref = cnot();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(x(r, c)) == doctest::Approx(std::abs(ref(r, c))).epsilon(1e-12));
    }
  }
}

TEST_CASE("measurement probability forms agree") {
  // Single-branch occupation: theta_i = eta makes a+ = 1.
  const double eta = 0.8;
  CyclicBasis b;
  b.theta_i = eta;
  b.varphi_i = 0.0;
  b.eta = eta;
  b.a_plus = 1.0;
  b.a_minus = 0.0;
  CHECK(measure_p1(b, 0.0) ==
        doctest::Approx(std::sin(eta / 2) * std::sin(eta / 2)).epsilon(1e-14));
  // a- = 0 removes the gamma dependence.
  CHECK(measure_p1(b, 1.3) == doctest::Approx(measure_p1(b, 0.0)).epsilon(1e-14));

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> th(0.0, kPi), g(0.0, 2.0 * kPi);
  double max_diff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double eta_i = th(rng), theta_i = th(rng), gamma = g(rng);
    CyclicBasis basis;
    basis.theta_i = theta_i;
    basis.varphi_i = 0.0;
    basis.eta = eta_i;
    basis.a_plus = std::cos(0.5 * (eta_i - theta_i));
    basis.a_minus = std::sin(0.5 * (eta_i - theta_i));
    const double p6 = measure_p1(basis, gamma);
    const double p7 = measure_p1_closed(eta_i, theta_i, gamma);
    max_diff = std::max(max_diff, std::abs(p6 - p7));
    CHECK(p6 >= -1e-12);
    CHECK(p6 <= 1.0 + 1e-12);
  }
  CHECK(max_diff < 1e-12);

  // Closed-form special cases.
  CHECK(measure_p1_closed(0.8, 0.8, 1.234) ==
        doctest::Approx(0.5 * (1.0 - std::cos(0.8))).epsilon(1e-14));
  CHECK(measure_p1_closed(0.8, 0.0, 0.1) ==
        doctest::Approx(0.5 * (1.0 - std::cos(0.8))).epsilon(1e-14));
  // Oscillation amplitude over cos(2 gamma) equals |sin(eta-theta) sin(theta)|.
  const double eta2 = 1.0, theta2 = 0.4;
  const double hi = measure_p1_closed(eta2, theta2, 0.0);
  const double lo = measure_p1_closed(eta2, theta2, kPi / 2);
  CHECK(std::abs(hi - lo) ==
        doctest::Approx(std::abs(std::sin(eta2 - theta2) * std::sin(theta2)))
            .epsilon(1e-12));
}

TEST_CASE("fidelity basics") {
  const Unitary2 u = u1_sq(0.3);
  CHECK(fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(Unitary2::Identity(), kI * Unitary2::Identity()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  Unitary2 sx;
  sx << 0.0, 1.0, 1.0, 0.0;
  CHECK(fidelity(Unitary2::Identity(), sx) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(Eigen::MatrixXcd::Identity(2, 2),
                           Eigen::MatrixXcd::Identity(4, 4)),
                  std::invalid_argument);
}

TEST_CASE("end-to-end: calibrated drive realizes the cyclic gate") {
  const double chi0 = 2.0 * kPi / 3.0;
  const CalibrationResult cal = omega_zero_dynamic(kDev, chi0);
  const Schedule s = process_ii(kDev, {chi0, cal.omega});
  const Eigen::Matrix2cd emp = propagator(kDev, s);
  const double s_dir = cal.omega > 0 ? 1.0 : -1.0;
  const Unitary2 expect = cyclic_gate(s_dir * cal.gamma_target, chi0, 0.0);
  CHECK(fidelity(emp, expect) > 1.0 - 1e-5);
}
