// SPDX-License-Identifier: MIT
//
// Single charge-qubit model: device parameters, the flux/charge-controlled
// fictitious field, the spin-1/2 Hamiltonian, and the Bloch-sphere maps.
//
// Conventions used throughout the library:
//   - energies at the interface are in ueV, times in units of
//     tau0 = hbar / (E1 + E2);
//   - the charge basis is {|0>, |1>} (0 or 1 excess Cooper pair) with
//     sigma_z |0> = +|0>, so the charge operator is n = diag(0, 1);
//   - spinors with Bloch angles (theta, phi) are
//     [e^{-i phi/2} cos(theta/2), e^{i phi/2} sin(theta/2)].
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace geoq {

/// hbar in ueV * ns.
inline constexpr double k_hbar_uev_ns = 0.6582119569;

/// Junction and charging energies of one qubit, in ueV.
struct DeviceParams {
  double e1 = 0.0;   ///< first junction Josephson energy
  double e2 = 0.0;   ///< second junction Josephson energy
  double ech = 0.0;  ///< charging energy

  /// Natural energy scale E1 + E2 (the zero-flux Josephson energy).
  double ej_scale() const { return e1 + e2; }

  /// Natural time unit tau0 = hbar / (E1 + E2), in ns.
  double tau0_ns() const { return k_hbar_uev_ns / ej_scale(); }
  double tau0_ps() const { return 1e3 * tau0_ns(); }

  /// True for a symmetric SQUID (e1 == e2).  Accepted but degenerate:
  /// the Josephson energy then vanishes at half a flux quantum and the
  /// transverse field direction is ill-defined on that slice.
  bool is_degenerate() const { return e1 == e2; }

  /// Throws std::invalid_argument unless all energies are positive.
  void validate() const;
};

/// The externally driven control pair (flux in units of the flux quantum,
/// gate charge n_x^e dimensionless).  Flux is kept as a continuous real
/// number; the field below is smooth in it (period 2, and period 1 up to
/// the sign of the transverse components).
struct ControlPoint {
  double flux = 0.0;
  double gate_charge = 0.0;
};

/// Fictitious magnetic field acting on the qubit, in ueV.
struct FieldVector {
  double bx = 0.0, by = 0.0, bz = 0.0;

  double norm() const { return std::sqrt(bx * bx + by * by + bz * bz); }
  double transverse_norm() const { return std::hypot(bx, by); }
  /// Azimuth atan2(by, bx) in (-pi, pi].
  double azimuth() const { return std::atan2(by, bx); }
  /// Polar angle atan2(sqrt(bx^2+by^2), bz) in [0, pi].
  double polar() const { return std::atan2(transverse_norm(), bz); }

  Eigen::Vector3d vec() const { return {bx, by, bz}; }
};

/// Two complex amplitudes on the charge basis.
struct SpinState {
  std::complex<double> amp0{1.0, 0.0};
  std::complex<double> amp1{0.0, 0.0};

  double norm() const { return std::sqrt(std::norm(amp0) + std::norm(amp1)); }
  SpinState normalized() const;

  Eigen::Vector2cd vec() const { return {amp0, amp1}; }
  static SpinState from_vec(const Eigen::Vector2cd& v) { return {v(0), v(1)}; }
  /// Spinor with Bloch angles (theta, phi) in the convention above.
  static SpinState from_angles(double theta, double phi);
};

/// Unit vector n = <psi| sigma |psi>.
struct BlochVector {
  double nx = 0.0, ny = 0.0, nz = 1.0;

  double norm() const { return std::sqrt(nx * nx + ny * ny + nz * nz); }
  double azimuth() const { return std::atan2(ny, nx); }
  double polar() const { return std::atan2(std::hypot(nx, ny), nz); }
  Eigen::Vector3d vec() const { return {nx, ny, nz}; }
  static BlochVector from_angles(double theta, double phi);
};

/// Decomposition of the prepared state on the pair of orthonormal basis
/// spinors psi_+(theta_i, varphi_i), psi_-(theta_i, varphi_i).
struct CyclicBasis {
  double theta_i = 0.0;
  double varphi_i = 0.0;
  double eta = 0.0;
  std::complex<double> a_plus{1.0, 0.0};
  std::complex<double> a_minus{0.0, 0.0};

  SpinState psi_plus() const { return SpinState::from_angles(theta_i, varphi_i); }
  /// The orthogonal partner [-e^{-i phi/2} sin(theta/2), e^{i phi/2} cos(theta/2)].
  SpinState psi_minus() const;
  /// a_+ psi_+ + a_- psi_-.
  SpinState initial_state() const;
};

/// Effective Josephson energy E_J(flux) = sqrt((E1-E2)^2 + 4 E1 E2 cos^2(pi flux)).
/// Periodic in flux with period 1; range [|E1-E2|, E1+E2].
double josephson_energy(const DeviceParams& params, double flux);

/// Field mixing angle, computed as atan2((E1-E2) sin(pi flux), (E1+E2) cos(pi flux))
/// so it stays well defined where the printed tangent form is singular.
double mixing_angle(const DeviceParams& params, double flux);

/// The fictitious field
///   (E_J cos(alpha), -E_J sin(alpha), Ech (1 - 2 n_x^e))
/// evaluated through the equivalent smooth closed form
///   ((E1+E2) cos(pi flux), -(E1-E2) sin(pi flux), Ech (1 - 2 n_x^e)).
FieldVector effective_field(const DeviceParams& params, const ControlPoint& cp);

/// d(bx, by)/d(flux); bz does not depend on flux.
FieldVector field_flux_derivative(const DeviceParams& params, double flux);

/// d(bz)/d(gate_charge) = -2 Ech.
double field_gate_derivative(const DeviceParams& params);

/// H = -(1/2) B . sigma.  Traceless Hermitian, eigenvalues -|B|/2 and +|B|/2.
Eigen::Matrix2cd hamiltonian(const FieldVector& field);

/// n = <psi| sigma |psi> (the state should be normalized).
BlochVector bloch_map(const SpinState& state);

/// Inverse of bloch_map up to a global phase.
SpinState spin_from_bloch(const BlochVector& n);

/// <psi| H |psi> = -(1/2) B . n, in the field's energy units.
double hamiltonian_expectation(const FieldVector& field, const BlochVector& n);

/// Ground state of the parking Hamiltonian (flux = 0, gate charge = 0):
/// the spin aligned with (E1+E2, 0, Ech), i.e. Bloch angles (eta, 0) with
/// tan(eta) = (E1+E2)/Ech.
SpinState prepared_ground_state(const DeviceParams& params);

/// Basis decomposition of the prepared ground state against the basis pair
/// defined by field_at_0 (the field the controls snap to at t = 0):
///   theta_i = polar angle of field_at_0, varphi_i = its azimuth,
///   eta = atan((E1+E2)/Ech),
///   a_+ = cos[(eta-theta_i)/2] cos(varphi_i/2) - i cos[(eta+theta_i)/2] sin(varphi_i/2),
///   a_- = sin[(eta-theta_i)/2] cos(varphi_i/2) + i sin[(eta+theta_i)/2] sin(varphi_i/2).
/// Throws std::invalid_argument on a zero field (theta_i undefined).
CyclicBasis cyclic_basis(const DeviceParams& params, const FieldVector& field_at_0);

}  // namespace geoq
