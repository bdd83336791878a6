#pragma once

// CSV formats. All numbers are written with 17 significant digits so that a
// written trajectory parses back bit-exactly.
//
//   trajectory  t,theta0,theta1,omega0,omega1      (radians, rad/s)
//               t,theta0,theta1                    (accepted on input)
//   energy      t,energy
//   parameters  t,z1,...,z10,k,e_norm
//   objective   eval,objective,best
//   spectrum    f,mag_theta0,phase_theta0,mag_theta1,phase_theta1

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "furuta/metrics.h"
#include "furuta/report.h"
#include "furuta/sim.h"

namespace furuta {

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(const std::string& source, std::size_t line,
                const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string FormatDouble(double value);
// Whole-field parse; throws std::invalid_argument on trailing garbage.
double ParseDouble(std::string_view text);

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj);
// `source` names the stream in error messages. Position-only files get
// central-difference velocities (one-sided at the ends).
Trajectory ReadTrajectoryCsv(std::istream& in, const std::string& source = "<input>");
Trajectory ReadTrajectoryFile(const std::string& path);
void WriteTrajectoryFile(const std::string& path, const Trajectory& traj);

// Replaces omega0/omega1 with finite-difference estimates from the angles.
void ReconstructVelocities(Trajectory& traj);

void WriteEnergyCsv(std::ostream& out, const Trajectory& traj,
                    const std::vector<double>& energy);
void WriteParameterTraceCsv(std::ostream& out,
                            const std::vector<ParameterTracePoint>& trace);
void WriteObjectiveTraceCsv(std::ostream& out,
                            const std::vector<ObjectiveTracePoint>& trace);
// Both spectra must share the frequency grid.
void WriteSpectrumCsv(std::ostream& out, const Spectrum& theta0,
                      const Spectrum& theta1);

}  // namespace furuta
