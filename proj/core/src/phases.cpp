// SPDX-License-Identifier: MIT
#include "geoq/phases.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "geoq/numerics.hpp"

namespace geoq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleSin = 1e-9;       // sin(theta) below which phi freezes
constexpr double kOverlapFloor = 1e-10; // orthogonal-endpoint guard

std::complex<double> endpoint_overlap(const Trajectory& traj) {
  if (traj.states.size() < 2) {
    throw std::invalid_argument("total_phase: trajectory has no state samples");
  }
  const SpinState& a = traj.states.front();
  const SpinState& b = traj.states.back();
  return std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
}

}  // namespace

double total_phase(const Trajectory& traj) {
  const std::complex<double> ov = endpoint_overlap(traj);
  if (std::abs(ov) < kOverlapFloor) {
    throw std::domain_error(
        "total_phase: endpoint states are orthogonal, the overlap phase is "
        "undefined");
  }
  return std::arg(ov);
}

double dynamic_phase(const Trajectory& traj) {
  if (traj.h_expect.size() < 2) {
    throw std::invalid_argument("dynamic_phase: trajectory has no <H> samples");
  }
  const double h = traj.times[1] - traj.times[0];
  // -(1/hbar) int <H> dt  ==  -(1/(E1+E2)) int <H>_ueV dt_tau0.
  return -simpson_uniform(traj.h_expect, h) / traj.params.ej_scale();
}

double pancharatnam_line_integral(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2 || traj.bloch.size() != n) {
    throw std::invalid_argument("pancharatnam_line_integral: need Bloch samples");
  }
  const double scale = traj.params.ej_scale();

  // Check sampling density and the south-pole exclusion first.
  double prev_az = 0.0;
  bool have_prev = false;
  for (std::size_t k = 0; k < n; ++k) {
    const BlochVector& b = traj.bloch[k];
    const double sin_theta = std::hypot(b.nx, b.ny);
    if (1.0 + b.nz < kPoleSin * kPoleSin) {
      std::ostringstream os;
      os << "pancharatnam_line_integral: path passes through the south pole at t="
         << traj.times[k] << " where the connection is singular";
      throw std::domain_error(os.str());
    }
    if (sin_theta >= kPoleSin) {
      const double az = std::atan2(b.ny, b.nx);
      if (have_prev) {
        const double inc = std::abs(wrap_angle(az - prev_az));
        if (inc >= 0.5 * kPi) {
          throw std::domain_error(
              "pancharatnam_line_integral: consecutive azimuth increments reach "
              "pi/2; raise sample_count for a denser trajectory");
        }
      }
      prev_az = az;
      have_prev = true;
    }
  }

  // -(1/2) int (1 - cos theta) phi'(t) dt with the exact path velocity
  // n' = -B x n (internal units).  The integrand vanishes smoothly at the
  // north pole; the south pole was excluded above.
  std::vector<double> integrand(n);
  for (std::size_t k = 0; k < n; ++k) {
    const BlochVector& b = traj.bloch[k];
    const FieldVector& f = traj.field[k];
    const double den = b.nx * b.nx + b.ny * b.ny;
    if (den < kPoleSin * kPoleSin) {
      integrand[k] = 0.0;
      continue;
    }
    const double bx = f.bx / scale, by = f.by / scale, bz = f.bz / scale;
    const double ndx = -(by * b.nz - bz * b.ny);
    const double ndy = -(bz * b.nx - bx * b.nz);
    const double phi_dot = (b.nx * ndy - b.ny * ndx) / den;
    integrand[k] = (1.0 - b.nz) * phi_dot;
  }
  const double h = traj.times[1] - traj.times[0];
  double gamma = -0.5 * simpson_uniform(integrand, h);

  // Closure term from the endpoint angles; identically zero for a closed
  // path and whenever either endpoint sits at the north pole.
  const BlochVector& bi = traj.bloch.front();
  const BlochVector& bf = traj.bloch.back();
  const double sin_i = std::hypot(bi.nx, bi.ny);
  const double sin_f = std::hypot(bf.nx, bf.ny);
  if (sin_i >= kPoleSin && sin_f >= kPoleSin) {
    const double dphi = std::atan2(bf.ny, bf.nx) - std::atan2(bi.ny, bi.nx);
    const double cot_i = bi.nz >= 1.0 ? std::numeric_limits<double>::infinity()
                                      : (1.0 + bi.nz) / sin_i;
    const double cot_f = bf.nz >= 1.0 ? std::numeric_limits<double>::infinity()
                                      : (1.0 + bf.nz) / sin_f;
    gamma += std::atan2(std::sin(dphi), cot_i * cot_f + std::cos(dphi));
  }
  return gamma;
}

double geometric_phase_cyclic(const Trajectory& traj) {
  const CyclicityResult cyc = cyclicity_check(traj, 1e-5);
  if (!cyc.cyclic) {
    std::ostringstream os;
    os << "geometric_phase_cyclic: trajectory is not cyclic (Bloch residual "
       << cyc.residual << " exceeds 1e-5)";
    throw std::domain_error(os.str());
  }
  return wrap_angle(total_phase(traj) - dynamic_phase(traj));
}

PhaseDecomposition phase_decomposition(const Trajectory& traj, PhaseMethod method,
                                       bool allow_noncyclic) {
  const CyclicityResult cyc = cyclicity_check(traj, 1e-5);
  if (!cyc.cyclic && !allow_noncyclic) {
    std::ostringstream os;
    os << "trajectory is not cyclic (Bloch residual " << cyc.residual
       << "); pass allow_noncyclic to include the open-path closure term in "
          "the geometric phase";
    throw std::domain_error(os.str());
  }

  PhaseDecomposition out;
  out.method = method;
  out.total = total_phase(traj);
  out.dynamic = dynamic_phase(traj);
  const double line = pancharatnam_line_integral(traj);
  if (method == PhaseMethod::line_integral) {
    out.geometric = wrap_angle(line);
    out.winding = static_cast<int>(std::lround((line - out.geometric) / (2.0 * kPi)));
  } else {
    out.geometric = wrap_angle(out.total - out.dynamic);
    // Winding is a path property; take it from the line integral.
    const double line_wrapped = wrap_angle(line);
    out.winding = static_cast<int>(std::lround((line - line_wrapped) / (2.0 * kPi)));
  }
  return out;
}

namespace {

double solid_angle_segment(const DeviceParams& params, const Schedule& sched,
                           double a, double b, int points) {
  std::vector<double> f(static_cast<std::size_t>(points));
  const double h = (b - a) / (points - 1);
  for (int k = 0; k < points; ++k) {
    const double t = (k == points - 1) ? b : a + h * k;
    // rate() is right-sided; at the segment end query just inside so the
    // endpoint integrand uses this segment's derivative, not the next one's.
    const double tr = (k == points - 1) ? b - 1e-9 * (b - a) : t;
    const FieldVector bf = schedule_field(params, sched, t);
    const FieldVector bd = schedule_field_rate(params, sched, tr);
    const double bn = bf.norm();
    const double den = bn * (bf.bz + bn);
    if (!(den > 0.0) || den < 1e-12 * bn * bn) {
      std::ostringstream os;
      os << "solid_angle: field reaches the ray Bz=-|B| at t=" << t
         << " where the integrand is singular";
      throw std::domain_error(os.str());
    }
    f[static_cast<std::size_t>(k)] = (bf.bx * bd.by - bf.by * bd.bx) / den;
  }
  return simpson_uniform(f, h);
}

}  // namespace

double solid_angle_open(const DeviceParams& params, const Schedule& sched,
                        double t0, double t1, const IntegratorConfig& cfg) {
  params.validate();
  if (!(t1 >= t0)) throw std::invalid_argument("solid_angle_open: t1 < t0");
  const auto& breaks = sched.breakpoints();
  const int per_segment = std::max(129, cfg.sample_count);
  double omega = 0.0;
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double a = std::max(breaks[seg], t0);
    const double b = std::min(breaks[seg + 1], t1);
    if (!(b > a)) continue;
    omega += solid_angle_segment(params, sched, a, b, per_segment);
  }
  return omega;
}

double solid_angle(const DeviceParams& params, const Schedule& sched,
                   const IntegratorConfig& cfg) {
  if (!sched.is_closed()) {
    throw std::domain_error("solid_angle: schedule is not closed (B(tau) != B(0))");
  }
  return solid_angle_open(params, sched, 0.0, sched.duration(), cfg);
}

double adiabatic_phase(const DeviceParams& params, const Schedule& sched,
                       const IntegratorConfig& cfg) {
  return -0.5 * solid_angle(params, sched, cfg);
}

}  // namespace geoq
