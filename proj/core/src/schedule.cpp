// SPDX-License-Identifier: MIT
#include "geoq/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace geoq {

namespace {

constexpr double kPi = std::numbers::pi;

double domain_slack(double tau) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, tau);
}

void check_domain(double t, double tau) {
  if (t < -domain_slack(tau) || t > tau + domain_slack(tau)) {
    std::ostringstream os;
    os << "schedule evaluated outside [0, " << tau << "] at t=" << t;
    throw ScheduleError(os.str());
  }
}

// Flux of the rotating drive: (1/pi) * unwrapped arctan(k tan(omega t))
// with k = (E1+E2)/(E1-E2).  Branch n is chosen so the curve is continuous
// and passes through 0 at t = 0; within branch n the principal value is
// computed with atan2 to stay finite where tan blows up.
double process_ii_flux(double k, double wt) {
  const double n = std::nearbyint(wt / kPi);
  const double th = wt - n * kPi;  // in [-pi/2, pi/2]
  const double u = std::atan2(k * std::sin(th), std::cos(th)) +
                   n * kPi * (k > 0.0 ? 1.0 : -1.0);
  return u / kPi;
}

double process_ii_flux_rate(double k, double wt, double omega) {
  // d(flux)/dt = (omega/pi) * k (1 + tan^2)/(1 + k^2 tan^2), written in
  // sin/cos so the tangent singularity cancels.
  const double s = std::sin(wt), c = std::cos(wt);
  return (omega / kPi) * k / (c * c + k * k * s * s);
}

}  // namespace

double ProcessIIParams::period() const {
  if (!(omega != 0.0)) throw ScheduleError("process II requires omega != 0");
  return 2.0 * kPi / std::abs(omega);
}

ControlPoint Schedule::at(double t) const {
  check_domain(t, tau_);
  t = std::clamp(t, 0.0, tau_);

  if (const auto* pi = std::get_if<ProcessIImpl>(&impl_)) {
    const auto& p = pi->p;
    const double x = t / p.tau;
    if (x < 0.25) return {4.0 * p.phi_m * x, 0.5};
    if (x < 0.5) return {p.phi_m, 0.5 + 4.0 * (p.nxm - 0.5) * (x - 0.25)};
    if (x < 0.75) return {-4.0 * p.phi_m * x + 3.0 * p.phi_m, p.nxm};
    return {0.0, p.nxm + 4.0 * (0.5 - p.nxm) * (x - 0.75)};
  }
  if (const auto* pii = std::get_if<ProcessIIImpl>(&impl_)) {
    const auto& d = pii->params;
    const auto& p = pii->p;
    const double k = (d.e1 + d.e2) / (d.e1 - d.e2);
    const double flux = process_ii_flux(k, p.omega * t);
    const double ej = josephson_energy(d, flux);
    const double bz = ej / std::tan(p.chi0) + p.omega * (d.e1 + d.e2) - pii->bz_offset;
    return {flux, 0.5 * (1.0 - bz / d.ech)};
  }
  const auto& tab = std::get<TabulatedImpl>(impl_);
  const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
  std::size_t hi = std::min<std::size_t>(tab.t.size() - 1,
                                         static_cast<std::size_t>(it - tab.t.begin()));
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double w = (t - tab.t[lo]) / (tab.t[hi] - tab.t[lo]);
  return {tab.flux[lo] + w * (tab.flux[hi] - tab.flux[lo]),
          tab.gate[lo] + w * (tab.gate[hi] - tab.gate[lo])};
}

ControlRate Schedule::rate(double t) const {
  check_domain(t, tau_);
  t = std::clamp(t, 0.0, tau_);

  if (const auto* pi = std::get_if<ProcessIImpl>(&impl_)) {
    const auto& p = pi->p;
    const double x = (t == p.tau) ? 1.0 - 1e-12 : t / p.tau;  // left limit at tau
    if (x < 0.25) return {4.0 * p.phi_m / p.tau, 0.0};
    if (x < 0.5) return {0.0, 4.0 * (p.nxm - 0.5) / p.tau};
    if (x < 0.75) return {-4.0 * p.phi_m / p.tau, 0.0};
    return {0.0, 4.0 * (0.5 - p.nxm) / p.tau};
  }
  if (const auto* pii = std::get_if<ProcessIIImpl>(&impl_)) {
    const auto& d = pii->params;
    const auto& p = pii->p;
    const double k = (d.e1 + d.e2) / (d.e1 - d.e2);
    const double dflux = process_ii_flux_rate(k, p.omega * t, p.omega);
    // d(gate)/dt = -(cot chi0 / (2 Ech)) dE_J/dt with
    // dE_J/dt = -4 E1 E2 sin(pi flux) cos(pi flux) pi dflux / E_J.
    const double flux = process_ii_flux(k, p.omega * t);
    const double ej = josephson_energy(d, flux);
    const double dej = -4.0 * d.e1 * d.e2 * std::sin(kPi * flux) *
                       std::cos(kPi * flux) * kPi * dflux / ej;
    return {dflux, -0.5 * dej / (std::tan(p.chi0) * d.ech)};
  }
  const auto& tab = std::get<TabulatedImpl>(impl_);
  auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
  std::size_t hi = std::min<std::size_t>(tab.t.size() - 1,
                                         static_cast<std::size_t>(it - tab.t.begin()));
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double dt = tab.t[hi] - tab.t[lo];
  return {(tab.flux[hi] - tab.flux[lo]) / dt, (tab.gate[hi] - tab.gate[lo]) / dt};
}

Schedule process_i(const ProcessIParams& p) {
  if (!(p.tau > 0.0)) throw ScheduleError("process I requires tau > 0");
  if (!std::isfinite(p.phi_m) || !std::isfinite(p.nxm)) {
    throw ScheduleError("process I parameters must be finite");
  }
  Schedule s;
  s.kind_ = Schedule::Kind::process_i;
  s.tau_ = p.tau;
  s.closed_ = true;
  s.breaks_ = {0.0, 0.25 * p.tau, 0.5 * p.tau, 0.75 * p.tau, p.tau};
  s.impl_ = Schedule::ProcessIImpl{p};
  return s;
}

Schedule process_ii(const DeviceParams& params, const ProcessIIParams& p,
                    double bz_offset) {
  params.validate();
  if (params.is_degenerate()) {
    throw ScheduleError("process II needs an asymmetric SQUID (e1 != e2)");
  }
  if (!(p.chi0 > 0.0) || !(p.chi0 < kPi)) {
    throw ScheduleError("process II requires chi0 in (0, pi)");
  }
  if (!(p.omega != 0.0) || !std::isfinite(p.omega)) {
    throw ScheduleError("process II requires finite omega != 0");
  }
  Schedule s;
  s.kind_ = Schedule::Kind::process_ii;
  s.tau_ = p.period();
  s.closed_ = true;
  s.breaks_ = {0.0, s.tau_};
  s.impl_ = Schedule::ProcessIIImpl{params, p, bz_offset};
  return s;
}

Schedule parse_tabulated(std::string_view text) {
  std::vector<double> tcol, fcol, gcol;
  bool header_seen = false;
  long line_no = 0;
  std::size_t pos = 0;

  auto parse_cell = [&](std::string_view cell, long line) {
    double v = 0.0;
    const char* b = cell.data();
    const char* e = cell.data() + cell.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t')) --e;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) {
      throw ScheduleError("non-numeric cell '" + std::string(cell) + "' on line " +
                              std::to_string(line),
                          line);
    }
    return v;
  };

  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    // Strip comments and blank lines.
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (blank) continue;

    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "t,flux,gate_charge") {
        throw ScheduleError("expected header 't,flux,gate_charge' on line " +
                                std::to_string(line_no),
                            line_no);
      }
      header_seen = true;
      continue;
    }

    const std::size_t c1 = line.find(',');
    const std::size_t c2 = (c1 == std::string_view::npos)
                               ? std::string_view::npos
                               : line.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw ScheduleError("expected 3 comma-separated columns on line " +
                              std::to_string(line_no),
                          line_no);
    }
    const double tv = parse_cell(line.substr(0, c1), line_no);
    const double fv = parse_cell(line.substr(c1 + 1, c2 - c1 - 1), line_no);
    const double gv = parse_cell(line.substr(c2 + 1), line_no);
    if (!tcol.empty() && !(tv > tcol.back())) {
      throw ScheduleError("time column must be strictly increasing; line " +
                              std::to_string(line_no) + " has t=" +
                              std::to_string(tv) + " after t=" +
                              std::to_string(tcol.back()),
                          line_no);
    }
    tcol.push_back(tv);
    fcol.push_back(fv);
    gcol.push_back(gv);
  }

  if (!header_seen) throw ScheduleError("missing header 't,flux,gate_charge'");
  if (tcol.size() < 2) throw ScheduleError("a tabulated schedule needs at least 2 rows");

  Schedule s;
  s.kind_ = Schedule::Kind::tabulated;
  s.tau_ = tcol.back() - tcol.front();
  if (const double t0 = tcol.front(); t0 != 0.0) {
    // Shift so the schedule starts at 0.
    for (double& tv : tcol) tv -= t0;
  }
  s.breaks_ = tcol;

  // Field closure is parameter independent: the transverse field is a
  // function of flux with period 2 and the z-field is affine in the gate
  // charge.
  const double dflux = fcol.back() - fcol.front();
  const double flux_defect = std::abs(dflux - 2.0 * std::nearbyint(dflux / 2.0));
  const double gate_defect = std::abs(gcol.back() - gcol.front());
  const double scale = std::max({1.0, std::abs(fcol.front()), std::abs(gcol.front())});
  s.closed_ = flux_defect <= 1e-9 * scale && gate_defect <= 1e-9 * scale;

  s.impl_ = Schedule::TabulatedImpl{std::move(tcol), std::move(fcol), std::move(gcol)};
  return s;
}

Schedule constant_schedule(double flux, double gate_charge, double tau) {
  std::ostringstream os;
  os.precision(17);
  os << "t,flux,gate_charge\n0," << flux << "," << gate_charge << "\n"
     << tau << "," << flux << "," << gate_charge << "\n";
  return parse_tabulated(os.str());
}

FieldVector schedule_field(const DeviceParams& params, const Schedule& sched, double t) {
  return effective_field(params, sched.at(t));
}

FieldVector schedule_field_rate(const DeviceParams& params, const Schedule& sched,
                                double t) {
  const ControlPoint cp = sched.at(t);
  const ControlRate cr = sched.rate(t);
  const FieldVector dflux = field_flux_derivative(params, cp.flux);
  return {dflux.bx * cr.dflux_dt, dflux.by * cr.dflux_dt,
          field_gate_derivative(params) * cr.dgate_dt};
}

}  // namespace geoq
