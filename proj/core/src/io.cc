#include "furuta/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace furuta {
namespace {

std::string ParseErrorMessage(const std::string& source, std::size_t line,
                              const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  return msg.str();
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    fields.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

CsvParseError::CsvParseError(const std::string& source, std::size_t line,
                             const std::string& what)
    : std::runtime_error(ParseErrorMessage(source, line, what)), line_(line) {}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double ParseDouble(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj) {
  out << "t,theta0,theta1,omega0,omega1\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& s = traj.states[i];
    out << FormatDouble(traj.times[i]) << ',' << FormatDouble(s.theta0) << ','
        << FormatDouble(s.theta1) << ',' << FormatDouble(s.omega0) << ','
        << FormatDouble(s.omega1) << '\n';
  }
}

Trajectory ReadTrajectoryCsv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto header = SplitFields(line);
    const std::vector<std::string_view> full = {"t", "theta0", "theta1", "omega0", "omega1"};
    const std::vector<std::string_view> positions = {"t", "theta0", "theta1"};
    if (header == full) {
      columns = 5;
    } else if (header == positions) {
      columns = 3;
    } else {
      throw CsvParseError(source, line_no,
                          "expected header 't,theta0,theta1[,omega0,omega1]'");
    }
    break;
  }
  if (columns == 0) throw CsvParseError(source, line_no, "missing header");

  Trajectory traj;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != columns) {
      std::ostringstream msg;
      msg << "expected " << columns << " fields, found " << fields.size();
      throw CsvParseError(source, line_no, msg.str());
    }
    double v[5] = {0, 0, 0, 0, 0};
    for (std::size_t c = 0; c < columns; ++c) {
      try {
        v[c] = ParseDouble(fields[c]);
      } catch (const std::invalid_argument& e) {
        throw CsvParseError(source, line_no, e.what());
      }
    }
    if (!traj.times.empty() && !(v[0] > traj.times.back())) {
      throw CsvParseError(source, line_no, "time is not strictly increasing");
    }
    traj.times.push_back(v[0]);
    traj.states.push_back({v[1], v[2], v[3], v[4]});
  }
  if (columns == 3) ReconstructVelocities(traj);
  return traj;
}

Trajectory ReadTrajectoryFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadTrajectoryCsv(in, path);
}

void WriteTrajectoryFile(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteTrajectoryCsv(out, traj);
}

void ReconstructVelocities(Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2) {
    for (State& s : traj.states) s.omega0 = s.omega1 = 0.0;
    return;
  }
  auto diff = [&](std::size_t a, std::size_t b) {
    const double h = traj.times[b] - traj.times[a];
    return Vec2{(traj.states[b].theta0 - traj.states[a].theta0) / h,
                (traj.states[b].theta1 - traj.states[a].theta1) / h};
  };
  std::vector<Vec2> rates(n);
  rates[0] = diff(0, 1);
  rates[n - 1] = diff(n - 2, n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) rates[i] = diff(i - 1, i + 1);
  for (std::size_t i = 0; i < n; ++i) {
    traj.states[i].omega0 = rates[i][0];
    traj.states[i].omega1 = rates[i][1];
  }
}

void WriteEnergyCsv(std::ostream& out, const Trajectory& traj,
                    const std::vector<double>& energy) {
  out << "t,energy\n";
  for (std::size_t i = 0; i < traj.size() && i < energy.size(); ++i) {
    out << FormatDouble(traj.times[i]) << ',' << FormatDouble(energy[i]) << '\n';
  }
}

void WriteParameterTraceCsv(std::ostream& out,
                            const std::vector<ParameterTracePoint>& trace) {
  out << "t";
  for (int n = 1; n <= kNumParams; ++n) out << ",z" << n;
  out << ",k,e_norm\n";
  for (const ParameterTracePoint& p : trace) {
    out << FormatDouble(p.t);
    for (int n = 0; n < kNumParams; ++n) out << ',' << FormatDouble(p.z[n]);
    out << ',' << FormatDouble(p.k) << ',' << FormatDouble(p.e_norm) << '\n';
  }
}

void WriteObjectiveTraceCsv(std::ostream& out,
                            const std::vector<ObjectiveTracePoint>& trace) {
  out << "eval,objective,best\n";
  for (const ObjectiveTracePoint& p : trace) {
    out << p.eval << ',' << FormatDouble(p.objective) << ','
        << FormatDouble(p.best) << '\n';
  }
}

void WriteSpectrumCsv(std::ostream& out, const Spectrum& theta0,
                      const Spectrum& theta1) {
  if (theta0.frequencies.size() != theta1.frequencies.size()) {
    throw std::invalid_argument("spectra have different lengths");
  }
  out << "f,mag_theta0,phase_theta0,mag_theta1,phase_theta1\n";
  for (std::size_t k = 0; k < theta0.frequencies.size(); ++k) {
    out << FormatDouble(theta0.frequencies[k]) << ','
        << FormatDouble(theta0.magnitude[k]) << ','
        << FormatDouble(theta0.phase[k]) << ','
        << FormatDouble(theta1.magnitude[k]) << ','
        << FormatDouble(theta1.phase[k]) << '\n';
  }
}

}  // namespace furuta
