#pragma once

#include <string>

#include <tqxy/config.hpp>

namespace tqxy::cli {

struct Options {
  std::string out_dir;  // resolved: --out, else output.dir
  bool ci = false;
};

int cmd_design(const RunConfig& cfg, const Options& opt);
int cmd_pulse(const RunConfig& cfg, const Options& opt);
int cmd_sequence(const RunConfig& cfg, const Options& opt);
int cmd_trajectory(const RunConfig& cfg, const Options& opt);
int cmd_simulate(const RunConfig& cfg, const Options& opt);
int cmd_scan(const RunConfig& cfg, const Options& opt);
int cmd_budget(const RunConfig& cfg, const Options& opt);
int cmd_reproduce_table1(const RunConfig& cfg, const Options& opt);

}  // namespace tqxy::cli
