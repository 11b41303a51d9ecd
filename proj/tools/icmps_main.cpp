// icmps_main.cpp — Command-line front end.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "icmps/commands.hpp"

namespace {

struct Flags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_file, "flat key = value file");
  static const char* keys[] = {"preset",       "scheme",     "eta0",
                               "omega0",       "T0",         "delta",
                               "N",            "local_dim",  "dt",
                               "t_final",      "sv_threshold", "max_bond",
                               "omega_max",    "quad_points",  "record_stride",
                               "outdir"};
  for (const char* k : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + k,
        [&flags, k](const std::string& v) { flags.overrides.emplace_back(k, v); },
        std::string("config key ") + k);
  }
}

icmps::cli::Config resolve(const Flags& flags) {
  icmps::cli::Config c;
  std::vector<std::pair<std::string, std::string>> kv;
  if (!flags.config_file.empty())
    kv = icmps::cli::read_config_file(flags.config_file);
  kv.insert(kv.end(), flags.overrides.begin(), flags.overrides.end());
  icmps::cli::apply_pairs(c, kv);
  icmps::cli::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-boson dynamics with matrix product states"};
  app.require_subcommand(1);

  Flags f_sim, f_coeffs, f_cmp, f_oracle, f_bench;
  std::string schemes_csv = "C,IC";
  int bench_dc = 60, bench_dic = 10;

  CLI::App* sim = app.add_subcommand("simulate", "run one scheme");
  add_config_options(sim, f_sim);
  CLI::App* coeffs = app.add_subcommand("chain-coeffs",
                                        "emit chain/star coefficients");
  add_config_options(coeffs, f_coeffs);
  CLI::App* cmp = app.add_subcommand("compare", "run several schemes");
  add_config_options(cmp, f_cmp);
  cmp->add_option("--schemes", schemes_csv, "comma-separated scheme list");
  CLI::App* orc = app.add_subcommand("oracle-check",
                                     "scheme vs dense reference");
  add_config_options(orc, f_oracle);
  CLI::App* bench = app.add_subcommand("bench", "matched C/IC cost report");
  add_config_options(bench, f_bench);
  bench->add_option("--dc", bench_dc, "C-scheme local dimension");
  bench->add_option("--dic", bench_dic, "IC-scheme local dimension");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return icmps::cli::cmd_simulate(resolve(f_sim));
    if (coeffs->parsed()) return icmps::cli::cmd_chain_coeffs(resolve(f_coeffs));
    if (cmp->parsed()) {
      std::vector<std::string> schemes;
      std::string cur;
      for (char ch : schemes_csv + ",") {
        if (ch == ',') {
          if (!cur.empty()) schemes.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      return icmps::cli::cmd_compare(resolve(f_cmp), schemes);
    }
    if (orc->parsed()) return icmps::cli::cmd_oracle_check(resolve(f_oracle));
    if (bench->parsed())
      return icmps::cli::cmd_bench(resolve(f_bench), bench_dc, bench_dic);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
