#include "qdgate/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace qdgate {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names{
      {Command::mixing, "mixing"}, {Command::table, "table"},         {Command::spectrum, "spectrum"},
      {Command::gate, "gate"},     {Command::populations, "populations"}, {Command::optimize, "optimize"},
      {Command::lz, "lz"},
  };
  return names;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [c, n] : command_names())
    if (n == name) return c;
  return std::nullopt;
}

std::string command_name(Command c) {
  for (const auto& [cmd, n] : command_names())
    if (cmd == c) return n;
  return "?";
}

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys{
      "command",
      "output_path",
      "luttinger.gamma1",
      "luttinger.gamma2",
      "luttinger.gamma3",
      "trap.omega_x_mev",
      "trap.omega_y_mev",
      "trap.omega_z_mev",
      "params.delta_mev",
      "params.eps",
      "params.eps_tilde",
      "params.m_hh_hh_mev",
      "params.m_lh_lh_mev",
      "params.m_lh_hh_mev",
      "params.vxx_mev",
      "params.offset_a_mev",
      "params.offset_b_mev",
      "pulse.omega0_mev",
      "pulse.tau_omega_ps",
      "pulse.delta0_mev",
      "pulse.tau_delta_ps",
      "pulse.t_start_ps",
      "pulse.t_end_ps",
      "pulse.dt_ps",
      "spectrum.omega_mev",
      "spectrum.ratio_min",
      "spectrum.ratio_max",
      "spectrum.points",
      "series.stride",
      "optimizer.w_theta",
      "optimizer.w_leak",
      "optimizer.simplex_scale",
      "optimizer.max_evals",
      "optimizer.tolerance",
      "optimizer.free",
      "lz.omega_gap_mev",
      "lz.delta_dot_mev_per_ps",
      "lz.simulate",
  };
  return keys;
}

RunConfig RunConfig::parse(std::istream& in, const std::string& source) {
  RunConfig cfg;
  const auto& known = known_keys();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'", source, line_no, body));
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(fmt::format("{}:{}: unknown key '{}'", source, line_no, key));
    if (value.empty()) throw ConfigError(fmt::format("{}:{}: key '{}' has no value", source, line_no, key));
    if (!cfg.entries_.emplace(key, value).second)
      throw ConfigError(fmt::format("{}:{}: key '{}' given twice", source, line_no, key));
  }
  if (auto it = cfg.entries_.find("command"); it != cfg.entries_.end()) {
    cfg.command_ = parse_command(it->second);
    if (!cfg.command_) throw ConfigError(fmt::format("key 'command': unknown command '{}'", it->second));
  }
  if (auto it = cfg.entries_.find("output_path"); it != cfg.entries_.end()) cfg.output_path_ = it->second;
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  return parse(in, path);
}

Command RunConfig::command() const {
  if (!command_) throw ConfigError("key 'command': no command given (set it in the config or pass --command)");
  return *command_;
}

double RunConfig::number(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(fmt::format("missing required key '{}' for command '{}'", key,
                                  command_ ? command_name(*command_) : std::string("?")));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || !std::isfinite(v))
    throw ConfigError(fmt::format("key '{}': '{}' is not a finite number", key, it->second));
  return v;
}

double RunConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long RunConfig::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v)) throw ConfigError(fmt::format("key '{}': expected an integer", key));
  return static_cast<long>(v);
}

bool RunConfig::boolean_or(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError(fmt::format("key '{}': expected true or false, got '{}'", key, it->second));
}

namespace {

void note(Echo& echo, const std::string& key, double v) { echo.emplace_back(key, format_number(v)); }

template <typename Fn>
auto checked(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  }
}

}  // namespace

lk::LuttingerParams RunConfig::luttinger(Echo& echo) const {
  lk::LuttingerParams p{number("luttinger.gamma1"), number("luttinger.gamma2"), number("luttinger.gamma3")};
  checked("luttinger.*", [&] { p.validate(); return 0; });
  note(echo, "luttinger.gamma1", p.gamma1);
  note(echo, "luttinger.gamma2", p.gamma2);
  note(echo, "luttinger.gamma3", p.gamma3);
  return p;
}

lk::TrapFrequencies RunConfig::trap(Echo& echo) const {
  lk::TrapFrequencies w{number("trap.omega_x_mev"), number("trap.omega_y_mev"), number("trap.omega_z_mev")};
  checked("trap.*", [&] { w.validate(); return 0; });
  note(echo, "trap.omega_x_mev", w.omega_x);
  note(echo, "trap.omega_y_mev", w.omega_y);
  note(echo, "trap.omega_z_mev", w.omega_z);
  return w;
}

foerster::ForsterCouplings RunConfig::couplings(Echo& echo) const {
  foerster::ForsterCouplings c;
  c.hh_hh = number("params.m_hh_hh_mev");
  c.lh_hh = number("params.m_lh_hh_mev");
  // Without an explicit value, use the single-scale relation M_lh,hh² = M_hh,hh M_lh,lh.
  c.lh_lh = number_or("params.m_lh_lh_mev", c.hh_hh != 0.0 ? c.lh_hh * c.lh_hh / c.hh_hh : 0.0);
  note(echo, "params.m_hh_hh_mev", c.hh_hh);
  note(echo, "params.m_lh_lh_mev", c.lh_lh);
  note(echo, "params.m_lh_hh_mev", c.lh_hh);
  return c;
}

PhysicalParams RunConfig::physical(Echo& echo) const {
  PhysicalParams p;
  p.delta = number("params.delta_mev");
  p.eps = number("params.eps");
  p.eps_tilde = number_or("params.eps_tilde", p.eps);
  p.vxx = number("params.vxx_mev");
  p.offset_a = number_or("params.offset_a_mev", 0.0);
  p.offset_b = number_or("params.offset_b_mev", 0.0);
  note(echo, "params.delta_mev", p.delta);
  note(echo, "params.eps", p.eps);
  note(echo, "params.eps_tilde", p.eps_tilde);
  p.couplings = couplings(echo);
  note(echo, "params.vxx_mev", p.vxx);
  note(echo, "params.offset_a_mev", p.offset_a);
  note(echo, "params.offset_b_mev", p.offset_b);
  checked("params.*", [&] { p.validate(); return 0; });
  return p;
}

PulseSchedule RunConfig::pulse(Echo& echo) const {
  PulseSchedule s = PulseSchedule::with_default_window(number("pulse.omega0_mev"), number("pulse.tau_omega_ps"),
                                                       number("pulse.delta0_mev"), number("pulse.tau_delta_ps"),
                                                       number_or("pulse.dt_ps", 0.001));
  s.t_start = number_or("pulse.t_start_ps", s.t_start);
  s.t_end = number_or("pulse.t_end_ps", s.t_end);
  checked("pulse.*", [&] { s.validate(); return 0; });
  note(echo, "pulse.omega0_mev", s.omega0);
  note(echo, "pulse.tau_omega_ps", s.tau_omega);
  note(echo, "pulse.delta0_mev", s.delta0);
  note(echo, "pulse.tau_delta_ps", s.tau_delta);
  note(echo, "pulse.t_start_ps", s.t_start);
  note(echo, "pulse.t_end_ps", s.t_end);
  note(echo, "pulse.dt_ps", s.dt);
  return s;
}

double RunConfig::spectrum_omega(Echo& echo) const {
  const double omega = number("spectrum.omega_mev");
  note(echo, "spectrum.omega_mev", omega);
  return omega;
}

std::vector<double> RunConfig::spectrum_ratios(Echo& echo) const {
  const double lo = number("spectrum.ratio_min");
  const double hi = number("spectrum.ratio_max");
  const long points = integer("spectrum.points");
  if (points < 1) throw ConfigError("key 'spectrum.points': must be at least 1");
  if (points > 1 && !(hi > lo)) throw ConfigError("key 'spectrum.ratio_max': must exceed spectrum.ratio_min");
  note(echo, "spectrum.ratio_min", lo);
  note(echo, "spectrum.ratio_max", hi);
  echo.emplace_back("spectrum.points", std::to_string(points));
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) grid[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  return grid;
}

long RunConfig::series_stride(Echo& echo) const {
  const long stride = has("series.stride") ? integer("series.stride") : 1;
  if (stride < 1) throw ConfigError("key 'series.stride': must be at least 1");
  echo.emplace_back("series.stride", std::to_string(stride));
  return stride;
}

OptimizerConfig RunConfig::optimizer(Echo& echo) const {
  OptimizerConfig c;
  c.w_theta = number_or("optimizer.w_theta", c.w_theta);
  c.w_leak = number_or("optimizer.w_leak", c.w_leak);
  c.simplex_scale = number_or("optimizer.simplex_scale", c.simplex_scale);
  if (has("optimizer.max_evals")) c.max_evals = static_cast<int>(integer("optimizer.max_evals"));
  c.tolerance = number_or("optimizer.tolerance", c.tolerance);
  std::string free_list = "omega0,delta0,tau_omega,tau_delta";
  if (auto it = entries_.find("optimizer.free"); it != entries_.end()) {
    free_list = it->second;
    c.free = {false, false, false, false};
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "omega0") c.free[0] = true;
      else if (item == "delta0") c.free[1] = true;
      else if (item == "tau_omega") c.free[2] = true;
      else if (item == "tau_delta") c.free[3] = true;
      else if (item != "none") throw ConfigError(fmt::format("key 'optimizer.free': unknown parameter '{}'", item));
    }
  }
  checked("optimizer.*", [&] { c.validate(); return 0; });
  note(echo, "optimizer.w_theta", c.w_theta);
  note(echo, "optimizer.w_leak", c.w_leak);
  note(echo, "optimizer.simplex_scale", c.simplex_scale);
  echo.emplace_back("optimizer.max_evals", std::to_string(c.max_evals));
  note(echo, "optimizer.tolerance", c.tolerance);
  echo.emplace_back("optimizer.free", free_list);
  return c;
}

}  // namespace qdgate
