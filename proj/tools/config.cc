#include "config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

#include "furuta/io.h"

namespace furuta {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Default tilt for the reference scenario; the angle of the physical rig is
// unknown.
constexpr double kDefaultPhiDeg = 30.0;

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool ParseBool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

std::uint64_t ParseUnsigned(const std::string& v) {
  std::size_t used = 0;
  const unsigned long long value = std::stoull(v, &used);
  if (used != v.size() || v.front() == '-') {
    throw std::invalid_argument("not an unsigned integer: '" + v + "'");
  }
  return value;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

double& FrictionField(FrictionParams& fp, int field) {
  switch (field) {
    case 0: return fp.mu_d;
    case 1: return fp.mu_s;
    case 2: return fp.mu_v;
    case 3: return fp.theta_dot_t;
    default: return fp.F_nt;
  }
}

std::map<std::string, Setter, std::less<>> BuildSetters() {
  std::map<std::string, Setter, std::less<>> s;
  auto number = [&s](const std::string& key, auto member) {
    s[key] = [member](RunConfig& c, const std::string& v) {
      member(c) = ParseDouble(v);
    };
  };

  number("m1", [](RunConfig& c) -> double& { return c.physical.m1; });
  number("m2", [](RunConfig& c) -> double& { return c.physical.m2; });
  number("j1z", [](RunConfig& c) -> double& { return c.physical.j1z; });
  number("j2x", [](RunConfig& c) -> double& { return c.physical.j2x; });
  number("j2y", [](RunConfig& c) -> double& { return c.physical.j2y; });
  number("j2z", [](RunConfig& c) -> double& { return c.physical.j2z; });
  number("l1", [](RunConfig& c) -> double& { return c.physical.l1; });
  number("l2", [](RunConfig& c) -> double& { return c.physical.l2; });
  number("L1", [](RunConfig& c) -> double& { return c.physical.L1; });
  number("L2", [](RunConfig& c) -> double& { return c.physical.L2; });
  number("g", [](RunConfig& c) -> double& { return c.physical.g; });
  s["phi_deg"] = [](RunConfig& c, const std::string& v) {
    c.physical.phi = ParseDouble(v) * kDegToRad;
  };

  for (int n = 0; n < kNumParams; ++n) {
    const std::string name(kParamNames[n]);
    const int joint = n / 5;
    const int field = n % 5;
    s[name] = [joint, field](RunConfig& c, const std::string& v) {
      FrictionField(joint == 0 ? c.truth0 : c.truth1, field) = ParseDouble(v);
    };
    s["z_l." + name] = [n](RunConfig& c, const std::string& v) {
      c.adaptation.bounds[n].lower = ParseDouble(v);
    };
    s["z_u." + name] = [n](RunConfig& c, const std::string& v) {
      c.adaptation.bounds[n].upper = ParseDouble(v);
    };
    s["lambda_l." + name] = [n](RunConfig& c, const std::string& v) {
      c.adaptation.bounds[n].lambda_lower = ParseDouble(v);
    };
    s["lambda_u." + name] = [n](RunConfig& c, const std::string& v) {
      c.adaptation.bounds[n].lambda_upper = ParseDouble(v);
    };
  }

  number("gamma", [](RunConfig& c) -> double& { return c.adaptation.gamma; });
  number("threshold", [](RunConfig& c) -> double& { return c.adaptation.threshold; });
  number("motion_speed_floor",
         [](RunConfig& c) -> double& { return c.adaptation.motion_speed_floor; });
  s["averaging"] = [](RunConfig& c, const std::string& v) {
    c.adaptation.averaging = ParseBool(v);
  };
  number("k0", [](RunConfig& c) -> double& { return c.k0; });

  s["nussbaum"] = [](RunConfig& c, const std::string& v) {
    if (v == "mittag_leffler") c.nussbaum.kind = NussbaumKind::kMittagLeffler;
    else if (v == "n2") c.nussbaum.kind = NussbaumKind::kN2;
    else if (v == "n3") c.nussbaum.kind = NussbaumKind::kN3;
    else if (v == "n4") c.nussbaum.kind = NussbaumKind::kN4;
    else throw std::invalid_argument("unknown Nussbaum function '" + v + "'");
  };
  number("nussbaum_lambda", [](RunConfig& c) -> double& { return c.nussbaum.lambda; });
  number("nussbaum_alpha", [](RunConfig& c) -> double& { return c.nussbaum.alpha; });
  number("series_tol", [](RunConfig& c) -> double& { return c.nussbaum.series_tol; });
  s["max_terms"] = [](RunConfig& c, const std::string& v) {
    c.nussbaum.max_terms = static_cast<int>(ParseUnsigned(v));
  };

  number("dt", [](RunConfig& c) -> double& { return c.sim.dt; });
  number("duration", [](RunConfig& c) -> double& { return c.sim.duration; });
  number("noise_sigma", [](RunConfig& c) -> double& { return c.sim.noise_sigma; });
  s["noise_enabled"] = [](RunConfig& c, const std::string& v) {
    c.sim.noise_enabled = ParseBool(v);
  };
  s["noise_units"] = [](RunConfig& c, const std::string& v) {
    if (v == "rad") c.noise_in_degrees = false;
    else if (v == "deg") c.noise_in_degrees = true;
    else throw std::invalid_argument("noise_units must be 'rad' or 'deg'");
  };
  number("ic_noise_sigma", [](RunConfig& c) -> double& { return c.ic_noise_sigma; });
  s["ic_theta0_deg"] = [](RunConfig& c, const std::string& v) {
    c.initial_condition.theta0 = ParseDouble(v) * kDegToRad;
  };
  s["ic_theta1_deg"] = [](RunConfig& c, const std::string& v) {
    c.initial_condition.theta1 = ParseDouble(v) * kDegToRad;
  };
  s["ic_omega0_deg"] = [](RunConfig& c, const std::string& v) {
    c.initial_condition.omega0 = ParseDouble(v) * kDegToRad;
  };
  s["ic_omega1_deg"] = [](RunConfig& c, const std::string& v) {
    c.initial_condition.omega1 = ParseDouble(v) * kDegToRad;
  };

  s["opt_max_evals"] = [](RunConfig& c, const std::string& v) {
    c.opt.max_evals = ParseUnsigned(v);
  };
  number("opt_simplex_scale", [](RunConfig& c) -> double& { return c.opt.init_simplex_scale; });
  number("opt_tolerance", [](RunConfig& c) -> double& { return c.opt.tolerance; });

  s["seed"] = [](RunConfig& c, const std::string& v) { c.seed = ParseUnsigned(v); };
  s["coriolis"] = [](RunConfig& c, const std::string& v) {
    if (v == "lagrangian") c.coriolis = CoriolisForm::kLagrangian;
    else if (v == "as_printed") c.coriolis = CoriolisForm::kAsPrinted;
    else throw std::invalid_argument("coriolis must be 'lagrangian' or 'as_printed'");
  };
  return s;
}

}  // namespace

RunConfig::RunConfig() {
  physical.phi = kDefaultPhiDeg * kDegToRad;
  truth0 = {5e-4, 6e-4, 2.5e-4, 5e-3, 10e-3};
  truth1 = {6e-4, 7e-4, 2.5e-4, 5e-3, 10e-3};
  sim.dt = 1e-3;
  sim.duration = 35.0;
  sim.noise_enabled = true;
  sim.noise_sigma = 0.1;
  initial_condition = {0.0, 120.0 * kDegToRad, 0.0, 0.0};
}

void RunConfig::Validate() const {
  try {
    physical.Validate();
    truth0.Validate();
    truth1.Validate();
    adaptation.Validate();
    nussbaum.Validate();
    sim.Validate();
    opt.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!initial_condition.IsFinite()) throw ConfigError("initial condition must be finite");
  if (!(ic_noise_sigma >= 0.0)) throw ConfigError("ic_noise_sigma must be >= 0");
  if (!(k0 > 0.0)) throw ConfigError("k0 must be > 0");
}

PlantModel RunConfig::TruthPlant() const {
  PlantModel plant;
  plant.physical = physical;
  plant.joint0 = truth0;
  plant.joint1 = truth1;
  plant.coriolis = coriolis;
  return plant;
}

ObserverModel RunConfig::Observer() const {
  ObserverModel model;
  model.physical = physical;
  model.coriolis = coriolis;
  return model;
}

double RunConfig::MeasurementSigma() const {
  if (!sim.noise_enabled) return 0.0;
  return noise_in_degrees ? sim.noise_sigma * kDegToRad : sim.noise_sigma;
}

double RunConfig::InitialConditionSigma() const {
  return noise_in_degrees ? ic_noise_sigma * kDegToRad : ic_noise_sigma;
}

RunConfig ParseConfig(std::istream& in, const std::string& source) {
  static const auto setters = BuildSetters();
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    std::ostringstream where;
    where << source << ":" << line_no << ": ";
    if (eq == std::string::npos) {
      throw ConfigError(where.str() + "expected 'key = value'");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where.str() + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where.str() + "empty value for '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      throw ConfigError(where.str() + key + ": " + e.what());
    }
  }
  cfg.Validate();
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return ParseConfig(in, path);
}

}  // namespace furuta
