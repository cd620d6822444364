#include "tqxy/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>
#include "tqxy/pulse.hpp"
#include "tqxy/types.hpp"

namespace tqxy {

char axis_char(Axis a) { return a == Axis::X ? 'X' : 'Y'; }

const std::array<Axis, 16>& tqxy16_axes() {
  using enum Axis;
  static const std::array<Axis, 16> axes{X, Y, X, Y, Y, X, Y, X, X, Y, X, Y, Y, X, Y, X};
  return axes;
}

PulseParams SequencePlan::pulse_params(const PulseRecord& r) const {
  PulseParams p = shape;
  p.t_pi = r.t_pi;
  p.tau = 2.0 * r.t_pi;
  return p;
}

std::size_t SequencePlan::pulse_at(double t) const {
  if (pulses.empty()) throw InvalidArgument("empty plan");
  auto it = std::upper_bound(pulses.begin(), pulses.end(), t,
                             [](double v, const PulseRecord& r) { return v < r.t_start; });
  if (it == pulses.begin()) return 0;
  return static_cast<std::size_t>(std::distance(pulses.begin(), it) - 1);
}

double SequencePlan::fz(double t) const {
  if (t <= 0.0) return 1.0;
  if (t >= total_duration) return pulses.size() % 2 == 0 ? 1.0 : -1.0;
  const auto& r = pulses[pulse_at(t)];
  const double u = std::clamp((t - r.t_start) / r.t_pi, 0.0, 1.0);
  const double v = fz_ansatz(pulse_params(r), u).f;
  return (r.index % 2 == 0) ? v : -v;
}

namespace {

SequencePlan build_blocks(const std::string& kind, const std::vector<double>& xi_list,
                          const std::vector<double>& t_pi_list, const PulseParams& pulse,
                          double nu, bool flip_second_half) {
  if (xi_list.empty()) throw InvalidArgument("sequence needs at least one block");
  SequencePlan plan;
  plan.kind = kind;
  plan.shape = pulse;
  plan.nu = nu;
  plan.block_xi = xi_list;
  const auto& axes = tqxy16_axes();
  double t = 0.0;
  int idx = 0;
  for (std::size_t b = 0; b < xi_list.size(); ++b) {
    for (int j = 0; j < 16; ++j) {
      PulseRecord r;
      r.index = idx++;
      r.block = static_cast<int>(b);
      r.axis = axes[j];
      r.sign = (flip_second_half && j >= 8) ? -1 : 1;
      r.t_start = t;
      r.t_pi = t_pi_list[b];
      r.xi = xi_list[b];
      plan.pulses.push_back(r);
      t += r.t_pi;
    }
  }
  plan.total_duration = t;
  return plan;
}

void check_candidate(const GateCandidate& c) {
  if (c.N < 1) throw InvalidArgument("sequence: candidate needs N >= 1 blocks");
  if (!(c.t_pi > 0.0)) throw InvalidArgument("sequence: candidate t_pi must be positive");
  if (std::abs(c.tau - 2.0 * c.t_pi) > 1e-9 * c.tau ||
      std::abs(c.t_g - 16.0 * c.N * c.t_pi) > 1e-9 * c.t_g)
    throw InvalidArgument("sequence: timing inconsistency (t_g != 8 N tau or tau != 2 t_pi)");
  if (c.xi > 0.0 && std::abs(c.t_g * c.xi - two_pi) > 1e-9 * two_pi)
    throw InvalidArgument("sequence: timing inconsistency (t_g != 2 pi / xi)");
}

}  // namespace

SequencePlan build_tqxy16_sequence(const GateCandidate& c, const PulseParams& pulse) {
  check_candidate(c);
  const double nu = c.xi + two_pi * c.k / c.tau;
  return build_blocks("tqxy16", std::vector<double>(c.N, c.xi), std::vector<double>(c.N, c.t_pi),
                      pulse, nu, true);
}

SequencePlan build_xy8_sequence(const GateCandidate& c, const PulseParams& pulse) {
  check_candidate(c);
  const double nu = c.xi + two_pi * c.k / c.tau;
  return build_blocks("xy8", std::vector<double>(c.N, c.xi), std::vector<double>(c.N, c.t_pi),
                      pulse, nu, false);
}

SequencePlan as_xy8(const SequencePlan& plan) {
  SequencePlan out = plan;
  out.kind = "xy8";
  for (auto& r : out.pulses) r.sign = 1;
  return out;
}

SequencePlan build_cardioid_sequence(const std::vector<double>& xi_list, double nu,
                                     const PulseParams& pulse) {
  std::vector<double> tpis;
  for (double xi : xi_list) {
    if (!(xi > 0.0) || !(xi < nu)) throw InvalidArgument("cardioid block detuning outside (0, nu)");
    tpis.push_back(pi * pulse.k / (nu - xi));
    PulseParams p = pulse;
    p.t_pi = tpis.back();
    p.tau = 2.0 * p.t_pi;
    const auto rep = validate_pulse(p);
    if (!rep.ok) throw InvalidArgument("cardioid block pulse invalid: " + rep.violations.front());
  }
  return build_blocks("cardioid", xi_list, tpis, pulse, nu, true);
}

void write_plan_json(std::ostream& os, const SequencePlan& plan) {
  nlohmann::ordered_json j;
  j["kind"] = plan.kind;
  j["frequency_convention"] = "angular (rad/s)";
  j["nu_rad_s"] = plan.nu;
  j["shape"] = {{"k", plan.shape.k},
                {"b", plan.shape.b},
                {"c", plan.shape.c},
                {"d", plan.shape.d},
                {"t_ramp_s", plan.shape.t_ramp}};
  j["block_xi_rad_s"] = plan.block_xi;
  j["total_duration_s"] = plan.total_duration;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : plan.pulses) {
    arr.push_back({{"index", r.index},
                   {"axis", std::string(1, axis_char(r.axis))},
                   {"sign", r.sign},
                   {"t_start_s", r.t_start},
                   {"t_pi_s", r.t_pi},
                   {"xi_rad_s", r.xi}});
  }
  j["pulses"] = arr;
  os << std::setprecision(17) << j.dump(2) << '\n';
}

SequencePlan read_plan_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
    SequencePlan plan;
    plan.kind = j.at("kind").get<std::string>();
    plan.nu = j.at("nu_rad_s").get<double>();
    const auto& s = j.at("shape");
    plan.shape.k = s.at("k").get<int>();
    plan.shape.b = s.at("b").get<double>();
    plan.shape.c = s.at("c").get<double>();
    plan.shape.d = s.at("d").get<double>();
    plan.shape.t_ramp = s.at("t_ramp_s").get<double>();
    plan.block_xi = j.at("block_xi_rad_s").get<std::vector<double>>();
    plan.total_duration = j.at("total_duration_s").get<double>();
    for (const auto& p : j.at("pulses")) {
      PulseRecord r;
      r.index = p.at("index").get<int>();
      const auto ax = p.at("axis").get<std::string>();
      if (ax != "X" && ax != "Y") throw InvalidArgument("plan: axis must be X or Y");
      r.axis = ax == "X" ? Axis::X : Axis::Y;
      r.sign = p.at("sign").get<int>();
      r.t_start = p.at("t_start_s").get<double>();
      r.t_pi = p.at("t_pi_s").get<double>();
      r.xi = p.at("xi_rad_s").get<double>();
      r.block = r.index / 16;
      plan.pulses.push_back(r);
    }
    if (!plan.pulses.empty()) {
      plan.shape.t_pi = plan.pulses.front().t_pi;
      plan.shape.tau = 2.0 * plan.shape.t_pi;
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("plan document: ") + e.what());
  }
}

void write_plan_waveform_csv(std::ostream& os, const SequencePlan& plan, int samples_per_pulse) {
  if (samples_per_pulse < 2) throw InvalidArgument("waveform needs at least 2 samples per pulse");
  std::map<double, PulseProfile> profiles;
  os << "t_s,fz,omega_x_rad_s,omega_y_rad_s\n" << std::setprecision(17);
  for (const auto& r : plan.pulses) {
    auto it = profiles.find(r.t_pi);
    if (it == profiles.end()) it = profiles.emplace(r.t_pi, PulseProfile(plan.pulse_params(r))).first;
    const auto& prof = it->second;
    const double sgn = (r.index % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < samples_per_pulse; ++i) {
      const double u = static_cast<double>(i) / samples_per_pulse;
      const double w = prof.omega_unit(u) / r.t_pi;
      const double f = sgn * fz_ansatz(plan.pulse_params(r), u).f;
      os << r.t_start + u * r.t_pi << ',' << f << ',' << (r.axis == Axis::X ? w : 0.0) << ','
         << (r.axis == Axis::Y ? w : 0.0) << '\n';
    }
  }
  os << plan.total_duration << ',' << plan.fz(plan.total_duration) << ",0,0\n";
}

}  // namespace tqxy
