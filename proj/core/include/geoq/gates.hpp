// SPDX-License-Identifier: MIT
//
// Geometric gate matrices (2x2 single-qubit, 4x4 conditional and XOR) and
// the end-of-run charge measurement probability.
#pragma once

#include <Eigen/Dense>

#include "geoq/qubit.hpp"

namespace geoq {

using Unitary2 = Eigen::Matrix2cd;
using Unitary4 = Eigen::Matrix4cd;

/// [[cos g, i sin g], [i sin g, cos g]]: the cyclic-phase gate on the
/// equatorial basis pair (basis angles theta_i = pi/2, varphi_i = 0).
Unitary2 u1_sq(double gamma);

/// Phase-flip gate diag(1, e^{-2 i g}) (the theta_i = 0 cyclic gate up to a
/// global phase).
Unitary2 u2_sq(double gamma);

/// General cyclic-basis gate
///   e^{i g} |psi_+><psi_+| + e^{-i g} |psi_-><psi_-|
///   = cos(g) I + i sin(g) (n_i . sigma)
/// with n_i the Bloch axis at angles (theta_i, varphi_i).
Unitary2 cyclic_gate(double gamma, double theta_i, double varphi_i);

/// diag(e^{-i g0}, e^{i g0}, e^{-i g1}, e^{i g1}) on {|00>,|01>,|10>,|11>}.
Unitary4 conditional_gate(double gamma0, double gamma1);

/// [I (x) u1_sq(pi/4)] conditional_gate(0, 3pi/2) [I (x) u1_sq(pi/4)]^dag:
/// equal to CNOT up to conditional phases (control-0 block I, control-1
/// block [[0,1],[-1,0]]).
Unitary4 xor_compose();

/// CNOT on {|00>,|01>,|10>,|11>} (reference matrix for checks).
Unitary4 cnot();

/// Probability of measuring charge state |1> after a cyclic run with
/// geometric phase gamma:  |a_+ sin(theta_i/2) + a_- cos(theta_i/2) e^{-2 i gamma}|^2.
double measure_p1(const CyclicBasis& basis, double gamma);

/// Closed form valid when varphi_i = 0 (flux zero at t = 0):
///   [1 - cos(eta - theta_i) cos(theta_i)
///      + sin(eta - theta_i) sin(theta_i) cos(2 gamma)] / 2.
/// The value is asserted (not clamped) to lie within [-1e-12, 1 + 1e-12].
double measure_p1_closed(double eta, double theta_i, double gamma);

/// |tr(U^dag V)| / N in [0, 1]; equals 1 iff U = V up to a global phase.
/// Throws std::invalid_argument on dimension mismatch.
double fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// Frobenius check of U^dag U = I within tol.
bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

}  // namespace geoq
