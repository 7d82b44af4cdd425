// SPDX-License-Identifier: MIT
#include "geoq/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

void DeviceParams::validate() const {
  if (!(e1 > 0.0) || !(e2 > 0.0) || !(ech > 0.0)) {
    throw std::invalid_argument("device energies must be positive");
  }
  if (!std::isfinite(e1) || !std::isfinite(e2) || !std::isfinite(ech)) {
    throw std::invalid_argument("device energies must be finite");
  }
}

SpinState SpinState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero state");
  return {amp0 / n, amp1 / n};
}

SpinState SpinState::from_angles(double theta, double phi) {
  return {std::exp(-kI * (phi / 2.0)) * std::cos(theta / 2.0),
          std::exp(kI * (phi / 2.0)) * std::sin(theta / 2.0)};
}

BlochVector BlochVector::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

SpinState CyclicBasis::psi_minus() const {
  return {-std::exp(-kI * (varphi_i / 2.0)) * std::sin(theta_i / 2.0),
          std::exp(kI * (varphi_i / 2.0)) * std::cos(theta_i / 2.0)};
}

SpinState CyclicBasis::initial_state() const {
  const SpinState p = psi_plus();
  const SpinState m = psi_minus();
  return {a_plus * p.amp0 + a_minus * m.amp0, a_plus * p.amp1 + a_minus * m.amp1};
}

double josephson_energy(const DeviceParams& params, double flux) {
  const double c = std::cos(std::numbers::pi * flux);
  const double d = params.e1 - params.e2;
  return std::sqrt(d * d + 4.0 * params.e1 * params.e2 * c * c);
}

double mixing_angle(const DeviceParams& params, double flux) {
  const double u = std::numbers::pi * flux;
  return std::atan2((params.e1 - params.e2) * std::sin(u),
                    (params.e1 + params.e2) * std::cos(u));
}

FieldVector effective_field(const DeviceParams& params, const ControlPoint& cp) {
  const double u = std::numbers::pi * cp.flux;
  return {(params.e1 + params.e2) * std::cos(u),
          -(params.e1 - params.e2) * std::sin(u),
          params.ech * (1.0 - 2.0 * cp.gate_charge)};
}

FieldVector field_flux_derivative(const DeviceParams& params, double flux) {
  const double u = std::numbers::pi * flux;
  return {-std::numbers::pi * (params.e1 + params.e2) * std::sin(u),
          -std::numbers::pi * (params.e1 - params.e2) * std::cos(u), 0.0};
}

double field_gate_derivative(const DeviceParams& params) { return -2.0 * params.ech; }

Eigen::Matrix2cd hamiltonian(const FieldVector& field) {
  Eigen::Matrix2cd h;
  h(0, 0) = -0.5 * field.bz;
  h(1, 1) = 0.5 * field.bz;
  h(0, 1) = -0.5 * (field.bx - kI * field.by);
  h(1, 0) = -0.5 * (field.bx + kI * field.by);
  return h;
}

BlochVector bloch_map(const SpinState& state) {
  const std::complex<double> z = std::conj(state.amp0) * state.amp1;
  return {2.0 * z.real(), 2.0 * z.imag(),
          std::norm(state.amp0) - std::norm(state.amp1)};
}

SpinState spin_from_bloch(const BlochVector& n) {
  const double nz = std::clamp(n.nz, -1.0, 1.0);
  const double theta = std::acos(nz);
  const double phi = (n.nx == 0.0 && n.ny == 0.0) ? 0.0 : std::atan2(n.ny, n.nx);
  return SpinState::from_angles(theta, phi);
}

double hamiltonian_expectation(const FieldVector& field, const BlochVector& n) {
  return -0.5 * (field.bx * n.nx + field.by * n.ny + field.bz * n.nz);
}

SpinState prepared_ground_state(const DeviceParams& params) {
  const double eta = std::atan2(params.e1 + params.e2, params.ech);
  return SpinState::from_angles(eta, 0.0);
}

CyclicBasis cyclic_basis(const DeviceParams& params, const FieldVector& field_at_0) {
  params.validate();
  if (field_at_0.norm() <= 0.0) {
    throw std::invalid_argument("cyclic_basis: zero field at t=0, basis angle undefined");
  }
  CyclicBasis basis;
  basis.theta_i = field_at_0.polar();
  basis.varphi_i = field_at_0.azimuth();
  basis.eta = std::atan2(params.e1 + params.e2, params.ech);

  const double half_minus = 0.5 * (basis.eta - basis.theta_i);
  const double half_plus = 0.5 * (basis.eta + basis.theta_i);
  const double cp = std::cos(0.5 * basis.varphi_i);
  const double sp = std::sin(0.5 * basis.varphi_i);
  basis.a_plus = std::cos(half_minus) * cp - kI * std::cos(half_plus) * sp;
  basis.a_minus = std::sin(half_minus) * cp + kI * std::sin(half_plus) * sp;
  return basis;
}

}  // namespace geoq
