// SPDX-License-Identifier: MIT
#include "geoq/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace geoq {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.size() != traj.size()) {
    throw std::invalid_argument("write_trajectory_csv: trajectory has no states");
  }
  os << "t,phi,nxe,Bx,By,Bz,bhat_z,n_x,n_y,n_z,re0,im0,re1,im1\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const FieldVector& f = traj.field[k];
    const double bn = f.norm();
    const SpinState& s = traj.states[k];
    const BlochVector& n = traj.bloch[k];
    os << format_sig(traj.times[k]) << ',' << format_sig(traj.control[k].flux)
       << ',' << format_sig(traj.control[k].gate_charge) << ','
       << format_sig(f.bx) << ',' << format_sig(f.by) << ',' << format_sig(f.bz)
       << ',' << format_sig(bn > 0.0 ? f.bz / bn : 0.0) << ','
       << format_sig(n.nx) << ',' << format_sig(n.ny) << ',' << format_sig(n.nz)
       << ',' << format_sig(s.amp0.real()) << ',' << format_sig(s.amp0.imag())
       << ',' << format_sig(s.amp1.real()) << ',' << format_sig(s.amp1.imag())
       << '\n';
  }
}

void write_two_qubit_csv(std::ostream& os, const TwoQubitTrajectory& traj) {
  os << "t,re00,im00,re01,im01,re10,im10,re11,im11\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_sig(traj.times[k]);
    for (int i = 0; i < 4; ++i) {
      os << ',' << format_sig(traj.states[k](i).real()) << ','
         << format_sig(traj.states[k](i).imag());
    }
    os << '\n';
  }
}

void write_phase_report(std::ostream& os, const PhaseDecomposition& dec) {
  os << "total=" << format_sig(dec.total) << '\n'
     << "dynamic=" << format_sig(dec.dynamic) << '\n'
     << "geometric=" << format_sig(dec.geometric) << '\n'
     << "winding=" << dec.winding << '\n'
     << "method="
     << (dec.method == PhaseMethod::line_integral ? "line-integral"
                                                  : "overlap-minus-dynamic")
     << '\n';
}

void write_calibration_report(std::ostream& os, const CalibrationResult& cal) {
  os << "chi0=" << format_sig(cal.chi0) << '\n'
     << "omega=" << format_sig(cal.omega) << '\n'
     << "tau_over_tau0=" << format_sig(cal.tau) << '\n'
     << "residual=" << format_sig(cal.residual_dynamic_phase) << '\n'
     << "method="
     << (cal.method == CalibrationMethod::analytic ? "analytic" : "numeric")
     << '\n';
}

void write_matrix_table(std::ostream& os, const Eigen::MatrixXcd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ' ';
      os << format_sig(m(r, c).real()) << ' ' << format_sig(m(r, c).imag());
    }
    os << '\n';
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::map<std::string, std::string> read_report(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace geoq
