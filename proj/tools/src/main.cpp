#include <exception>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tqxy: shaped-pulse TQXY16 gate design and simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool ci = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_flag("--ci", ci, "exit nonzero when a tolerance or audit check fails");

  using Cmd = std::function<int(const tqxy::RunConfig&, const tqxy::cli::Options&)>;
  const std::vector<std::pair<std::string, std::pair<std::string, Cmd>>> table{
      {"design", {"enumerate gate candidates (t_g versus Omega_pp)", tqxy::cli::cmd_design}},
      {"pulse", {"shaped pi-pulse waveform and validity report", tqxy::cli::cmd_pulse}},
      {"sequence", {"timed pulse plan (JSON) and waveform", tqxy::cli::cmd_sequence}},
      {"trajectory", {"phase-space trajectory alpha(t), theta(t)", tqxy::cli::cmd_trajectory}},
      {"simulate", {"propagate one gate and report the Bell fidelity", tqxy::cli::cmd_simulate}},
      {"scan", {"infidelity versus one noise parameter", tqxy::cli::cmd_scan}},
      {"budget", {"error-budget columns for selected gates", tqxy::cli::cmd_budget}},
      {"reproduce-table1", {"full error budget for G1..G4 against the published budget", tqxy::cli::cmd_reproduce_table1}},
  };
  std::map<CLI::App*, Cmd> handlers;
  for (const auto& [name, entry] : table) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->fallthrough();
    handlers[sub] = entry.second;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    tqxy::RunConfig cfg = config_path.empty() ? tqxy::parse_config("{}") : tqxy::load_config(config_path);
    tqxy::cli::Options opt;
    opt.out_dir = out_dir.empty() ? cfg.output.dir : out_dir;
    opt.ci = ci;
    if (ci) cfg.numerics.audit = true;
    for (auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn(cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
