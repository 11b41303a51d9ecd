// config.hpp — Flat key-value experiment configuration: presets, file/flag
// parsing, validation, JSON echo, and assembly of the bath pipeline.
#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "icmps/chain_mapping.hpp"
#include "icmps/errors.hpp"
#include "icmps/propagate.hpp"
#include "icmps/spectral.hpp"

namespace icmps::cli {

struct Config {
  std::string preset{"adiabatic"};
  std::string scheme{"IC"};
  double eta0{1.0};
  double omega0{0.25};
  double T0{1.0};
  double delta{1.0};
  int N{60};
  int local_dim{10};
  double dt{5e-2};
  double t_final{M_PI};
  double sv_threshold{1e-3};
  int max_bond{1000};
  double omega_max{0.0};  // 0 selects the automatic cutoff
  int quad_points{0};     // 0 selects max(2000, 20*(N+1))
  int record_stride{1};
  std::string outdir{"out"};
};

// (eta0, omega0, T0, dt) regimes; everything else keeps its default.
inline void apply_preset(Config& c, const std::string& name) {
  c.preset = name;
  c.eta0 = 1.0;
  if (name == "adiabatic") {
    c.omega0 = 0.25;
    c.T0 = 1.0;
    c.dt = 5e-2;
  } else if (name == "intermediate") {
    c.omega0 = 1.0;
    c.T0 = 2.0;
    c.dt = 5e-3;
  } else if (name == "nonadiabatic") {
    c.omega0 = 4.0;
    c.T0 = 4.0;
    c.dt = 1.25e-2;
  } else {
    throw ConfigError("preset: unknown preset '" + name + "'");
  }
}

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size() || x > std::numeric_limits<int>::max() ||
        x < std::numeric_limits<int>::min())
      throw std::invalid_argument("");
    return static_cast<int>(x);
  } catch (...) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  const auto b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace detail

// Applies `key = value` pairs in order; a `preset` key resets the regime
// parameters before later keys refine them.
inline void apply_pairs(Config& c,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv)
    if (k == "preset") apply_preset(c, v);
  for (const auto& [k, v] : kv) {
    if (k == "preset") continue;
    if (k == "scheme") c.scheme = v;
    else if (k == "eta0") c.eta0 = detail::parse_double(k, v);
    else if (k == "omega0") c.omega0 = detail::parse_double(k, v);
    else if (k == "T0") c.T0 = detail::parse_double(k, v);
    else if (k == "delta") c.delta = detail::parse_double(k, v);
    else if (k == "N") c.N = detail::parse_int(k, v);
    else if (k == "local_dim") c.local_dim = detail::parse_int(k, v);
    else if (k == "dt") c.dt = detail::parse_double(k, v);
    else if (k == "t_final") c.t_final = detail::parse_double(k, v);
    else if (k == "sv_threshold") c.sv_threshold = detail::parse_double(k, v);
    else if (k == "max_bond") c.max_bond = detail::parse_int(k, v);
    else if (k == "omega_max") c.omega_max = detail::parse_double(k, v);
    else if (k == "quad_points") c.quad_points = detail::parse_int(k, v);
    else if (k == "record_stride") c.record_stride = detail::parse_int(k, v);
    else if (k == "outdir") c.outdir = v;
    else throw ConfigError("config: unknown key '" + k + "'");
  }
}

inline std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    kv.emplace_back(detail::trim(line.substr(0, eq)),
                    detail::trim(line.substr(eq + 1)));
  }
  return kv;
}

inline void validate(const Config& c) {
  prop::scheme_from_string(c.scheme);
  if (!(c.eta0 >= 0.0)) throw ConfigError("eta0: must be >= 0");
  if (!(c.omega0 > 0.0)) throw ConfigError("omega0: must be > 0");
  if (!(c.T0 >= 0.0)) throw ConfigError("T0: must be >= 0");
  if (!(c.delta >= 0.0)) throw ConfigError("delta: must be >= 0");
  if (c.N < 0) throw ConfigError("N: must be >= 0");
  if (c.local_dim < 2) throw ConfigError("local_dim: must be >= 2");
  if (!(c.dt > 0.0)) throw ConfigError("dt: must be > 0");
  if (!(c.t_final >= 0.0)) throw ConfigError("t_final: must be >= 0");
  if (!(c.sv_threshold >= 0.0)) throw ConfigError("sv_threshold: must be >= 0");
  if (c.max_bond < 1) throw ConfigError("max_bond: must be >= 1");
  if (!(c.omega_max >= 0.0)) throw ConfigError("omega_max: must be >= 0");
  if (c.quad_points < 0) throw ConfigError("quad_points: must be >= 0");
  if (c.record_stride < 1) throw ConfigError("record_stride: must be >= 1");
  if (c.quad_points > 0 && c.quad_points < 2 * (c.N + 1))
    throw ConfigError("quad_points: need at least 2*(N+1)");
}

inline nlohmann::json to_json(const Config& c) {
  nlohmann::json j;
  j["preset"] = c.preset;
  j["scheme"] = c.scheme;
  j["eta0"] = c.eta0;
  j["omega0"] = c.omega0;
  j["T0"] = c.T0;
  j["delta"] = c.delta;
  j["N"] = c.N;
  j["local_dim"] = c.local_dim;
  j["dt"] = c.dt;
  j["t_final"] = c.t_final;
  j["sv_threshold"] = c.sv_threshold;
  j["max_bond"] = c.max_bond;
  j["omega_max"] = c.omega_max;
  j["quad_points"] = c.quad_points;
  j["record_stride"] = c.record_stride;
  j["outdir"] = c.outdir;
  return j;
}

inline Config from_json(const nlohmann::json& j) {
  Config c;
  c.preset = j.at("preset").get<std::string>();
  c.scheme = j.at("scheme").get<std::string>();
  c.eta0 = j.at("eta0").get<double>();
  c.omega0 = j.at("omega0").get<double>();
  c.T0 = j.at("T0").get<double>();
  c.delta = j.at("delta").get<double>();
  c.N = j.at("N").get<int>();
  c.local_dim = j.at("local_dim").get<int>();
  c.dt = j.at("dt").get<double>();
  c.t_final = j.at("t_final").get<double>();
  c.sv_threshold = j.at("sv_threshold").get<double>();
  c.max_bond = j.at("max_bond").get<int>();
  c.omega_max = j.at("omega_max").get<double>();
  c.quad_points = j.at("quad_points").get<int>();
  c.record_stride = j.at("record_stride").get<int>();
  c.outdir = j.at("outdir").get<std::string>();
  return c;
}

// The full spectral-density -> chain pipeline for a validated config.
struct BathSetup {
  spectral::Model model;
  chain::Coefficients coeffs;
};

inline BathSetup build_bath(const Config& c) {
  validate(c);
  BathSetup b;
  b.model = spectral::Model{spectral::Kind::Drude, c.eta0, c.omega0};
  if (c.eta0 == 0.0) {
    // Decoupled spin: kappa0 = 0; the placeholder chain leaves the bath
    // vacuum invariant, so any positive hoppings work.
    b.coeffs.omegas = Eigen::VectorXd::Zero(c.N + 1);
    b.coeffs.kappas = Eigen::VectorXd::Ones(c.N + 1);
    b.coeffs.kappas[0] = 0.0;
    return b;
  }
  const double beta =
      c.T0 > 0.0 ? 1.0 / c.T0 : std::numeric_limits<double>::infinity();
  const spectral::ThermalizedWeight w =
      spectral::make_thermalized(b.model, beta, c.omega_max);
  const int q = c.quad_points > 0 ? c.quad_points
                                  : std::max(2000, 20 * (c.N + 1));
  b.coeffs = chain::stieltjes_recurrence(chain::discretize_measure(w, q), c.N);
  return b;
}

inline prop::SchemeConfig scheme_config(const Config& c) {
  prop::SchemeConfig sc;
  sc.scheme = prop::scheme_from_string(c.scheme);
  sc.local_dim = c.local_dim;
  sc.dt = c.dt;
  sc.t_final = c.t_final;
  sc.trunc.threshold = c.sv_threshold;
  sc.trunc.max_bond = c.max_bond;
  sc.record_stride = c.record_stride;
  return sc;
}

}  // namespace icmps::cli
