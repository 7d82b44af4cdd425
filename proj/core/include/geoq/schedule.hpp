// SPDX-License-Identifier: MIT
//
// Time-dependent control curves (flux(t), gate_charge(t)).  Two built-in
// drive processes plus tabulated schedules parsed from text.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoq/qubit.hpp"

namespace geoq {

class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& what, long line = -1)
      : std::runtime_error(what), line_(line) {}
  /// 1-based input line for parse errors, -1 otherwise.
  long line() const { return line_; }

 private:
  long line_;
};

/// Rectangle loop in (flux, gate charge) space:
///   segment 1: flux 0 -> phi_m          at gate charge 1/2
///   segment 2: gate charge 1/2 -> nxm   at flux phi_m
///   segment 3: flux phi_m -> 0          at gate charge nxm
///   segment 4: gate charge nxm -> 1/2   at flux 0
struct ProcessIParams {
  double phi_m = 0.25;
  double nxm = 0.20;
  double tau = 500.0;  ///< loop duration in tau0 units
};

/// Rotating drive at constant field-cone angle chi0:
///   flux(t) such that the field azimuth is exactly -omega t,
///   gate charge(t) = (1 - (E_J(t) cot(chi0) + hbar omega)/Ech) / 2.
/// omega is signed, in 1/tau0 units; one period lasts 2 pi / |omega|.
struct ProcessIIParams {
  double chi0 = 2.0943951023931953;  ///< cone angle in (0, pi)
  double omega = 1.0;                ///< signed angular frequency, 1/tau0

  double period() const;
};

struct ControlRate {
  double dflux_dt = 0.0;
  double dgate_dt = 0.0;
};

/// An immutable control curve on [0, duration].  Evaluation outside the
/// domain (beyond a few ulp of slack) throws ScheduleError rather than
/// extrapolating.
class Schedule {
 public:
  enum class Kind { process_i, process_ii, tabulated };

  ControlPoint at(double t) const;
  /// One-sided derivative (from the right except at t = duration).
  ControlRate rate(double t) const;

  double duration() const { return tau_; }
  Kind kind() const { return kind_; }
  bool is_closed() const { return closed_; }
  /// Segment boundaries including 0 and duration; the integrator restarts
  /// at interior entries so derivative kinks never sit inside a step.
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  friend Schedule process_i(const ProcessIParams&);
  friend Schedule process_ii(const DeviceParams&, const ProcessIIParams&, double);
  friend Schedule parse_tabulated(std::string_view);

  struct ProcessIImpl {
    ProcessIParams p;
  };
  struct ProcessIIImpl {
    DeviceParams params;
    ProcessIIParams p;
    double bz_offset;  // subtracted from the compensated z-field (coupled use)
  };
  struct TabulatedImpl {
    std::vector<double> t, flux, gate;
  };

  Schedule() = default;

  Kind kind_ = Kind::tabulated;
  double tau_ = 0.0;
  bool closed_ = false;
  std::vector<double> breaks_;
  std::variant<ProcessIImpl, ProcessIIImpl, TabulatedImpl> impl_;
};

/// Build the rectangle-loop schedule.  Always closed.
Schedule process_i(const ProcessIParams& p);

/// Build the constant-cone-angle rotating schedule over one period.
///
/// The flux arctangent is unwrapped across its branch points so the field
/// azimuth equals -omega t globally, which is what keeps
/// chi(t) = atan2(E_J(t), B_z(t) - hbar omega) exactly constant.
///
/// bz_offset shifts the z-field the gate charge compensates for; the
/// coupled-qubit module uses it to hold the conditional cone angle
/// constant when the control qubit biases the target.
Schedule process_ii(const DeviceParams& params, const ProcessIIParams& p,
                    double bz_offset = 0.0);

/// Parse a tabulated schedule.  Format: comma-separated text with header
/// line `t,flux,gate_charge`, time in tau0 units, `#` starting a comment
/// line; LF or CRLF.  Values are interpolated linearly.  Closure is
/// detected from the endpoint fields (gate charge equal and flux equal
/// modulo 2, which closes the field for every device).
Schedule parse_tabulated(std::string_view text);

/// Two-row constant schedule, mostly useful as a frozen control drive.
Schedule constant_schedule(double flux, double gate_charge, double tau);

/// Field along a schedule.
FieldVector schedule_field(const DeviceParams& params, const Schedule& sched, double t);

/// dB/dt along a schedule via the chain rule with analytic control rates.
FieldVector schedule_field_rate(const DeviceParams& params, const Schedule& sched, double t);

}  // namespace geoq
