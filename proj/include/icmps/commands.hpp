// commands.hpp — Subcommand implementations shared by the CLI binary and the
// test suite: simulate, compare, chain-coeffs, oracle-check, bench.
#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "icmps/config.hpp"
#include "icmps/oracle.hpp"

namespace icmps::cli {

namespace detail {

// Shortest round-trip decimal form; keeps CSV output reproducible.
inline std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  return f;
}

}  // namespace detail

// Times go out in the dimensionless unit t*delta/pi.
inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const prop::TrajectoryRecord& rec,
                                 double delta) {
  auto f = detail::open_out(path);
  f << "t,pop_up,norm_sq,max_bond,discarded_weight_cum,wall_ms\n";
  for (size_t i = 0; i < rec.times.size(); ++i)
    f << detail::fmt(rec.times[i] * delta / M_PI) << ','
      << detail::fmt(rec.population_up[i]) << ','
      << detail::fmt(rec.norm_sq[i]) << ',' << rec.max_bond[i] << ','
      << detail::fmt(rec.discarded_cum[i]) << ','
      << detail::fmt(rec.wall_ms[i]) << '\n';
}

inline void write_bond_profile_csv(const std::filesystem::path& path,
                                   const prop::TrajectoryRecord& rec,
                                   double delta) {
  auto f = detail::open_out(path);
  f << "t,bond_index,dimension\n";
  for (size_t i = 0; i < rec.times.size(); ++i) {
    const std::string t = detail::fmt(rec.times[i] * delta / M_PI);
    for (size_t b = 0; b < rec.bond_profiles[i].size(); ++b)
      f << t << ',' << b << ',' << rec.bond_profiles[i][b] << '\n';
  }
}

inline void write_occupations_csv(const std::filesystem::path& path,
                                  const prop::TrajectoryRecord& rec,
                                  double delta) {
  auto f = detail::open_out(path);
  f << "t,site_index,occupation\n";
  for (size_t i = 0; i < rec.times.size(); ++i) {
    const std::string t = detail::fmt(rec.times[i] * delta / M_PI);
    for (size_t m = 0; m < rec.occupations[i].size(); ++m)
      f << t << ',' << (m + 1) << ',' << detail::fmt(rec.occupations[i][m])
        << '\n';
  }
}

inline prop::TrajectoryRecord run_from_config(const Config& c) {
  const BathSetup bath = build_bath(c);
  return prop::run(prop::SpinBosonSystem{c.delta}, bath.coeffs,
                   scheme_config(c));
}

inline int cmd_simulate(const Config& c) {
  validate(c);
  std::filesystem::create_directories(c.outdir);
  const prop::TrajectoryRecord rec = run_from_config(c);
  const std::filesystem::path dir(c.outdir);
  write_trajectory_csv(dir / "trajectory.csv", rec, c.delta);
  write_bond_profile_csv(dir / "bond_profile.csv", rec, c.delta);
  write_occupations_csv(dir / "occupations.csv", rec, c.delta);
  detail::open_out(dir / "resolved_config.json") << to_json(c).dump(2) << '\n';
  std::cout << "simulate: scheme " << c.scheme << ", "
            << rec.times.size() << " rows -> " << (dir / "trajectory.csv").string()
            << '\n';
  return 0;
}

inline int cmd_chain_coeffs(const Config& c) {
  validate(c);
  std::filesystem::create_directories(c.outdir);
  const BathSetup bath = build_bath(c);
  const chain::StarDecomposition dec =
      chain::diagonalize_tridiagonal(bath.coeffs);
  nlohmann::json j;
  j["omegas"] = std::vector<double>(
      bath.coeffs.omegas.data(), bath.coeffs.omegas.data() + bath.coeffs.omegas.size());
  j["kappas"] = std::vector<double>(
      bath.coeffs.kappas.data(), bath.coeffs.kappas.data() + bath.coeffs.kappas.size());
  j["lambdas"] = std::vector<double>(dec.lambdas.data(),
                                     dec.lambdas.data() + dec.lambdas.size());
  std::vector<double> p_rowmajor;
  p_rowmajor.reserve(static_cast<size_t>(dec.P.size()));
  for (Eigen::Index r = 0; r < dec.P.rows(); ++r)
    for (Eigen::Index col = 0; col < dec.P.cols(); ++col)
      p_rowmajor.push_back(dec.P(r, col));
  j["P"] = p_rowmajor;
  j["kappa0"] = dec.kappa0;
  const std::filesystem::path out =
      std::filesystem::path(c.outdir) / "chain_coeffs.json";
  detail::open_out(out) << j.dump(2) << '\n';
  std::cout << "chain-coeffs: N=" << c.N << " -> " << out.string() << '\n';
  return 0;
}

inline int cmd_compare(const Config& base,
                       const std::vector<std::string>& schemes) {
  if (schemes.size() < 2)
    throw ConfigError("compare: need at least two schemes");
  validate(base);
  std::filesystem::create_directories(base.outdir);
  std::vector<prop::TrajectoryRecord> recs;
  for (const std::string& s : schemes) {
    Config c = base;
    c.scheme = s;
    validate(c);
    recs.push_back(run_from_config(c));
  }
  const size_t rows = recs[0].times.size();
  for (const auto& r : recs)
    if (r.times.size() != rows)
      throw AccuracyError("compare: trajectories not aligned");

  const std::filesystem::path dir(base.outdir);
  auto f = detail::open_out(dir / "comparison.csv");
  f << "t";
  for (const auto& s : schemes) f << ",pop_" << s;
  f << '\n';
  for (size_t i = 0; i < rows; ++i) {
    f << detail::fmt(recs[0].times[i] * base.delta / M_PI);
    for (const auto& r : recs) f << ',' << detail::fmt(r.population_up[i]);
    f << '\n';
  }

  nlohmann::json summary;
  for (size_t a = 0; a < schemes.size(); ++a)
    for (size_t b = a + 1; b < schemes.size(); ++b) {
      double diff = 0.0;
      for (size_t i = 0; i < rows; ++i)
        diff = std::max(diff, std::abs(recs[a].population_up[i] -
                                       recs[b].population_up[i]));
      summary["max_abs_diff"][schemes[a] + "_vs_" + schemes[b]] = diff;
    }
  for (size_t a = 0; a < schemes.size(); ++a) {
    nlohmann::json s;
    s["max_bond"] =
        *std::max_element(recs[a].max_bond.begin(), recs[a].max_bond.end());
    s["wall_ms_total"] = std::accumulate(recs[a].wall_ms.begin(),
                                         recs[a].wall_ms.end(), 0.0);
    summary["schemes"][schemes[a]] = s;
  }
  detail::open_out(dir / "summary.json") << summary.dump(2) << '\n';
  std::cout << "compare: " << schemes.size() << " schemes -> "
            << (dir / "comparison.csv").string() << '\n';
  return 0;
}

inline int cmd_oracle_check(const Config& c) {
  validate(c);
  std::filesystem::create_directories(c.outdir);
  const BathSetup bath = build_bath(c);
  const prop::TrajectoryRecord rec = prop::run(
      prop::SpinBosonSystem{c.delta}, bath.coeffs, scheme_config(c));
  const Eigen::MatrixXcd H =
      oracle::dense_hamiltonian(c.delta, bath.coeffs, c.local_dim);
  const oracle::ExactPropagator ex = oracle::make_propagator(H);
  const std::filesystem::path out =
      std::filesystem::path(c.outdir) / "oracle_check.csv";
  auto f = detail::open_out(out);
  f << "t,pop_oracle,pop_scheme,abs_error\n";
  double worst = 0.0;
  for (size_t i = 0; i < rec.times.size(); ++i) {
    const double p_ex = ex.population_up(rec.times[i]);
    const double err = std::abs(p_ex - rec.population_up[i]);
    worst = std::max(worst, err);
    f << detail::fmt(rec.times[i] * c.delta / M_PI) << ','
      << detail::fmt(p_ex) << ',' << detail::fmt(rec.population_up[i]) << ','
      << detail::fmt(err) << '\n';
  }
  std::cout << "oracle-check: scheme " << c.scheme << ", max abs error "
            << detail::fmt(worst) << " -> " << out.string() << '\n';
  return 0;
}

// Leading-cost model for one two-site split: the C scheme pays an SVD of a
// (d D) x (d D) pair tensor, the IC scheme one of (2 D') x (d D') with spin
// dimension 2 fixed.
inline double predicted_svd_cost_ratio(double d_c, double d_ic, double bond_c,
                                       double bond_ic) {
  return (d_c * d_c * d_c * bond_c * bond_c * bond_c) /
         (4.0 * d_ic * bond_ic * bond_ic * bond_ic);
}

inline int cmd_bench(const Config& base, int d_c, int d_ic) {
  validate(base);
  if (d_c < 2 || d_ic < 2) throw ConfigError("bench: local dims must be >= 2");
  std::filesystem::create_directories(base.outdir);

  auto one = [&](const std::string& scheme, int d) {
    Config c = base;
    c.scheme = scheme;
    c.local_dim = d;
    return run_from_config(c);
  };
  const prop::TrajectoryRecord rc = one("C", d_c);
  const prop::TrajectoryRecord ric = one("IC", d_ic);

  auto stats = [](const prop::TrajectoryRecord& r) {
    nlohmann::json s;
    s["wall_s"] =
        std::accumulate(r.wall_ms.begin(), r.wall_ms.end(), 0.0) / 1e3;
    s["svd_s"] = std::accumulate(r.svd_ms.begin(), r.svd_ms.end(), 0.0) / 1e3;
    s["max_bond"] = *std::max_element(r.max_bond.begin(), r.max_bond.end());
    return s;
  };
  nlohmann::json j;
  j["C"] = stats(rc);
  j["C"]["local_dim"] = d_c;
  j["IC"] = stats(ric);
  j["IC"]["local_dim"] = d_ic;
  const double bond_c = j["C"]["max_bond"].get<int>();
  const double bond_ic = j["IC"]["max_bond"].get<int>();
  j["measured_k"] = bond_ic / bond_c;
  j["predicted_svd_cost_ratio"] =
      predicted_svd_cost_ratio(d_c, d_ic, bond_c, bond_ic);
  j["measured_wall_ratio"] =
      j["C"]["wall_s"].get<double>() / j["IC"]["wall_s"].get<double>();
  const std::filesystem::path out =
      std::filesystem::path(base.outdir) / "bench_report.json";
  detail::open_out(out) << j.dump(2) << '\n';
  std::cout << "bench: predicted ratio "
            << detail::fmt(j["predicted_svd_cost_ratio"].get<double>())
            << ", wall ratio "
            << detail::fmt(j["measured_wall_ratio"].get<double>()) << " -> "
            << out.string() << '\n';
  return 0;
}

}  // namespace icmps::cli
