#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::path(TQXY_TEST_WORKDIR) / "cli";

int run(const std::string& args) {
  const std::string cmd = std::string(TQXY_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path config(const std::string& name, const std::string& text) {
  fs::create_directories(work);
  const fs::path p = work / (name + ".json");
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int lines(const fs::path& p) {
  std::ifstream in(p);
  std::string l;
  int n = 0;
  while (std::getline(in, l)) ++n;
  return n;
}

const char* kTrap = R"("system": {"nu_hz": 220000, "eta": 0.005, "two_mode": true})";

}  // namespace

TEST_CASE("design") {
  const auto cfg = config("design", std::string("{") + kTrap + R"(, "gate": {"harmonics": [7, 9]}})");
  REQUIRE(run("--config " + cfg.string() + " --out " + (work / "d1").string() + " design") == 0);
  const auto csv = slurp(work / "d1" / "design.csv");
  CHECK(csv.rfind("k,N,d,xi_rad_s,tg_s,omega_pp_rad_s,speed_ratio\n", 0) == 0);
  CHECK(csv.find("\n9,5,") != std::string::npos);
  CHECK(csv.find("\n9,10,") != std::string::npos);
  CHECK(fs::exists(work / "d1" / "design_manifest.json"));

  REQUIRE(run("--config " + cfg.string() + " --out " + (work / "d2").string() + " design") == 0);
  CHECK(slurp(work / "d2" / "design.csv") == csv);

  const auto empty = config("empty", std::string("{") + kTrap + R"(, "gate": {"k": 9, "d_range": [0.7, 0.7]}})");
  REQUIRE(run("--config " + empty.string() + " --out " + (work / "d3").string() + " design") == 0);
  CHECK(lines(work / "d3" / "design.csv") == 1);

  const auto even = config("even", std::string("{") + kTrap + R"(, "gate": {"k": 8}})");
  CHECK(run("--config " + even.string() + " --out " + (work / "d4").string() + " design") != 0);
}

TEST_CASE("unknown keys are rejected") {
  const auto bad = config("bad", R"({"gate": {"preset": "G4", "colour": 1}})");
  CHECK(run("--config " + bad.string() + " simulate") == 2);
}

TEST_CASE("sequence, pulse and trajectory outputs") {
  const auto cfg = config("g4", R"({"gate": {"preset": "G4"}})");
  for (const char* cmd : {"pulse", "sequence", "trajectory"})
    REQUIRE(run("--config " + cfg.string() + " --out " + (work / "g4").string() + " " + cmd) == 0);
  CHECK(slurp(work / "g4" / "pulse.csv").rfind("t_s,fz,omega_x_rad_s,omega_y_rad_s\n", 0) == 0);
  CHECK(slurp(work / "g4" / "trajectory.csv").rfind("t_s,re_alpha,im_alpha,theta_rad\n", 0) == 0);
  const auto plan = slurp(work / "g4" / "plan.json");
  for (const char* key : {"\"index\"", "\"axis\"", "\"sign\"", "\"t_start_s\"", "\"t_pi_s\"", "\"xi_rad_s\""})
    CHECK(plan.find(key) != std::string::npos);
  for (const char* m : {"pulse_manifest.json", "sequence_manifest.json", "trajectory_manifest.json"})
    CHECK(slurp(work / "g4" / m).find("frequency_convention") != std::string::npos);
}

TEST_CASE("simulate in CI mode") {
  const auto ok = config("sim", R"({"gate": {"preset": "G4"}})");
  CHECK(run("--ci --config " + ok.string() + " --out " + (work / "sim").string() + " simulate") == 0);
  CHECK(slurp(work / "sim" / "simulate.json").find("\"audit_passed\": true") != std::string::npos);

  const auto broken = config("broken", R"({"gate": {"preset": "G4"}, "numerics": {"steps_per_pulse": 3}})");
  CHECK(run("--ci --config " + broken.string() + " --out " + (work / "broken").string() + " simulate") != 0);
}

TEST_CASE("scan records per-point failures") {
  const auto t2 = config("t2", R"({"scan": {"axis": "T2", "grid": [0, 2000], "gates": ["G4"]}})");
  REQUIRE(run("--config " + t2.string() + " --out " + (work / "t2").string() + " scan") == 0);
  const auto csv = slurp(work / "t2" / "scan.csv");
  CHECK(csv.find("G4,T2,0,") != std::string::npos);
  CHECK(csv.find(",0,ok\n") != std::string::npos);

  const auto bad = config("ramp", R"({"scan": {"axis": "ramp", "grid": [1e7], "gates": ["G4"]}})");
  CHECK(run("--config " + bad.string() + " --out " + (work / "ramp").string() + " scan") == 0);
  CHECK(slurp(work / "ramp" / "scan.csv").find("error") != std::string::npos);
  CHECK(run("--ci --config " + bad.string() + " --out " + (work / "ramp2").string() + " scan") != 0);

  const auto empty = config("nogrid", R"({"scan": {"axis": "T2", "grid": []}})");
  CHECK(run("--config " + empty.string() + " scan") == 2);
}
