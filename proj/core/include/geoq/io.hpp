// SPDX-License-Identifier: MIT
//
// Plot-ready text output (CSV and key=value reports, 12 significant
// digits) and the matching readers used for round-trip checks.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoq/calibration.hpp"
#include "geoq/coupled.hpp"
#include "geoq/dynamics.hpp"
#include "geoq/phases.hpp"

namespace geoq {

/// shortest-faithful formatting at 12 significant digits ("%.12g").
std::string format_sig(double v);

/// Header: t,phi,nxe,Bx,By,Bz,bhat_z,n_x,n_y,n_z,re0,im0,re1,im1
/// (time in tau0, fields in ueV).  Requires state samples.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Header: t,re00,im00,re01,im01,re10,im10,re11,im11.
void write_two_qubit_csv(std::ostream& os, const TwoQubitTrajectory& traj);

/// Lines total=, dynamic=, geometric=, winding=, method=.
void write_phase_report(std::ostream& os, const PhaseDecomposition& dec);

/// Lines chi0=, omega=, tau_over_tau0=, residual=, method=.
void write_calibration_report(std::ostream& os, const CalibrationResult& cal);

/// Row-major table of 2N columns (re, im per entry), 12 significant digits.
void write_matrix_table(std::ostream& os, const Eigen::MatrixXcd& m);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads comma-separated numeric tables; `#` lines are skipped.
CsvTable read_csv(std::istream& is);

/// Reads key=value lines; `#` lines are skipped.
std::map<std::string, std::string> read_report(std::istream& is);

}  // namespace geoq
