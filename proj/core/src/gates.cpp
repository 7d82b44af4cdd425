// SPDX-License-Identifier: MIT
#include "geoq/gates.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace geoq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Unitary2 u1_sq(double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  Unitary2 u;
  u << c, kI * s, kI * s, c;
  return u;
}

Unitary2 u2_sq(double gamma) {
  Unitary2 u = Unitary2::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = std::exp(-2.0 * kI * gamma);
  return u;
}

Unitary2 cyclic_gate(double gamma, double theta_i, double varphi_i) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  const double nx = std::sin(theta_i) * std::cos(varphi_i);
  const double ny = std::sin(theta_i) * std::sin(varphi_i);
  const double nz = std::cos(theta_i);
  Unitary2 u;
  u(0, 0) = c + kI * s * nz;
  u(0, 1) = kI * s * (nx - kI * ny);
  u(1, 0) = kI * s * (nx + kI * ny);
  u(1, 1) = c - kI * s * nz;
  return u;
}

Unitary4 conditional_gate(double gamma0, double gamma1) {
  Unitary4 u = Unitary4::Zero();
  u(0, 0) = std::exp(-kI * gamma0);
  u(1, 1) = std::exp(kI * gamma0);
  u(2, 2) = std::exp(-kI * gamma1);
  u(3, 3) = std::exp(kI * gamma1);
  return u;
}

Unitary4 xor_compose() {
  const Unitary2 v = u1_sq(std::numbers::pi / 4.0);
  Unitary4 lift = Unitary4::Zero();
  lift.block<2, 2>(0, 0) = v;
  lift.block<2, 2>(2, 2) = v;
  const Unitary4 core = conditional_gate(0.0, 1.5 * std::numbers::pi);
  return lift * core * lift.adjoint();
}

Unitary4 cnot() {
  Unitary4 u = Unitary4::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

double measure_p1(const CyclicBasis& basis, double gamma) {
  const std::complex<double> amp =
      basis.a_plus * std::sin(0.5 * basis.theta_i) +
      basis.a_minus * std::cos(0.5 * basis.theta_i) * std::exp(-2.0 * kI * gamma);
  return std::norm(amp);
}

double measure_p1_closed(double eta, double theta_i, double gamma) {
  const double p = 0.5 * (1.0 - std::cos(eta - theta_i) * std::cos(theta_i) +
                          std::sin(eta - theta_i) * std::sin(theta_i) *
                              std::cos(2.0 * gamma));
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::logic_error("measure_p1_closed: probability outside [0, 1]");
  }
  return p;
}

double fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  const Eigen::MatrixXcd g = u.adjoint() * u;
  return (g - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm() <= tol;
}

}  // namespace geoq
