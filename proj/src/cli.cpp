#include "qdgate/cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

#include "qdgate/estimates.hpp"
#include "qdgate/foerster.hpp"
#include "qdgate/propagator.hpp"

namespace qdgate {

namespace {

// Jz values are half-integers; print them as exact fractions.
std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return fmt::format("{}/2", twice);
}

// RFC 4180 quoting for fields that contain separators.
std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_header(std::ostream& os, Command c, const Echo& echo) {
  os << "# qdgate " << command_name(c) << "\n";
  for (const auto& [k, v] : echo) os << "# " << k << " = " << v << "\n";
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError(fmt::format("key 'output_path': cannot write '{}'", path));
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool to_file() const { return static_cast<bool>(file_); }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

void cmd_mixing(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Echo echo;
  const auto p = cfg.luttinger(echo);
  const auto w = cfg.trap(echo);
  const auto est = lk::mixing_epsilon(p, w);
  if (!est.perturbative())
    err << fmt::format("warning: 2|dE_h|/|W| = {:.4g} < 5, first-order mixing estimate is unreliable\n",
                       est.validity_ratio);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::mixing, echo);
  os << "epsilon = " << format_number(est.epsilon) << "\n";
  os << "epsilon_exact = " << format_number(lk::exact_mixing_epsilon(p, w)) << "\n";
  os << "heavy_light_splitting_mev = " << format_number(lk::heavy_light_splitting(p, w)) << "\n";
}

void cmd_table(const RunConfig& cfg, std::ostream& out) {
  Echo echo;
  const auto c = cfg.couplings(echo);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::table, echo);
  os << "jzh1,jze1,jzh2,jze2,element_symbolic,element_value_meV\n";
  for (const auto& row : foerster::transfer_table_rows()) {
    os << half(row.state1.twice_hole()) << ',' << half(row.state1.twice_electron()) << ','
       << half(row.state2.twice_hole()) << ',' << half(row.state2.twice_electron()) << ',' << csv_field(row.symbolic) << ','
       << format_number(foerster::transfer_table_element(row.state1, row.state2, c)) << "\n";
  }
}

void cmd_spectrum(const RunConfig& cfg, int threads, std::ostream& out) {
  Echo echo;
  const auto p = cfg.physical(echo);
  const double omega = cfg.spectrum_omega(echo);
  const auto grid = cfg.spectrum_ratios(echo);
  const auto table = spectrum_sweep(p, omega, grid, threads);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::spectrum, echo);
  os << "ratio";
  for (int k = 1; k <= kBasisSize; ++k) os << fmt::format(",e{:02d}", k);
  os << "\n";
  for (const auto& pt : table) {
    os << format_number(pt.ratio);
    for (double e : pt.energies) os << ',' << format_number(e);
    os << "\n";
  }
}

void cmd_gate(const RunConfig& cfg, int threads, std::ostream& out) {
  Echo echo;
  const auto p = cfg.physical(echo);
  const auto s = cfg.pulse(echo);
  GateOptions opt;
  opt.threads = threads;
  opt.stride = cfg.series_stride(echo);
  const GateRecord g = gate_phases(p, s, opt);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::gate, echo);
  os << "t_ps,theta_rad,phi00,phi01,phi10,phi11\n";
  for (std::size_t k = 0; k < g.times.size(); ++k) {
    os << format_number(g.times[k]) << ',' << format_number(g.theta_series[k]);
    for (const auto& series : g.phase_series) os << ',' << format_number(series[k]);
    os << "\n";
  }
  const std::string prefix = sink.to_file() ? "" : "# ";
  out << prefix << "theta_final = " << format_number(g.theta_final) << "\n";
  out << prefix << "theta_error = " << format_number(wrapped_distance(g.theta_final, kPi)) << "\n";
  const char* names[] = {"00", "01", "10", "11"};
  for (std::size_t i = 0; i < 4; ++i) out << prefix << "leakage_" << names[i] << " = " << format_number(g.leakage[i]) << "\n";
}

void cmd_populations(const RunConfig& cfg, int threads, std::ostream& out) {
  Echo echo;
  const auto p = cfg.physical(echo);
  const auto s = cfg.pulse(echo);
  GateOptions opt;
  opt.threads = threads;
  opt.stride = cfg.series_stride(echo);
  const PopulationReport r = populations_report(p, s, opt);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::populations, echo);
  os << "t_ps,p00,p01,p10,p11\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    os << format_number(r.times[k]);
    for (const auto& series : r.series) os << ',' << format_number(series[k]);
    os << "\n";
  }
}

void cmd_optimize(const RunConfig& cfg, int threads, std::ostream& out) {
  Echo echo;
  const auto p = cfg.physical(echo);
  const auto s0 = cfg.pulse(echo);
  auto oc = cfg.optimizer(echo);
  oc.threads = threads;
  const OptimizeResult r = optimize_pulse(p, s0, oc);
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::optimize, echo);
  const auto& s = r.schedule;
  os << "omega0_mev = " << format_number(s.omega0) << "\n";
  os << "tau_omega_ps = " << format_number(s.tau_omega) << "\n";
  os << "delta0_mev = " << format_number(s.delta0) << "\n";
  os << "tau_delta_ps = " << format_number(s.tau_delta) << "\n";
  os << "t_start_ps = " << format_number(s.t_start) << "\n";
  os << "t_end_ps = " << format_number(s.t_end) << "\n";
  os << "dt_ps = " << format_number(s.dt) << "\n";
  os << "theta = " << format_number(r.achieved.theta) << "\n";
  os << "theta_error = " << format_number(r.achieved.theta_error) << "\n";
  os << "leakage = " << format_number(r.achieved.leakage) << "\n";
  os << "objective = " << format_number(r.achieved.objective) << "\n";
  os << "evaluations = " << r.evaluations << "\n";
  os << "converged = " << (r.converged ? "true" : "false") << "\n";
}

void cmd_lz(const RunConfig& cfg, int threads, std::ostream& out) {
  Echo echo;
  const bool simulate = cfg.boolean_or("lz.simulate", false);
  const bool direct = cfg.has("lz.omega_gap_mev") || cfg.has("lz.delta_dot_mev_per_ps");
  if (!simulate && !direct)
    throw ConfigError("missing required key 'lz.omega_gap_mev' for command 'lz' (or set lz.simulate = true)");
  std::ostringstream body;
  if (direct) {
    const LZInput in{cfg.number("lz.omega_gap_mev"), cfg.number("lz.delta_dot_mev_per_ps")};
    echo.emplace_back("lz.omega_gap_mev", format_number(in.omega_gap));
    echo.emplace_back("lz.delta_dot_mev_per_ps", format_number(in.delta_dot));
    try {
      body << "lz_probability = " << format_number(lz_probability(in)) << "\n";
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("lz.*: {}", e.what()));
    }
  }
  if (simulate) {
    echo.emplace_back("lz.simulate", "true");
    const auto p = cfg.physical(echo);
    const auto s = cfg.pulse(echo);
    GateOptions opt;
    opt.threads = threads;
    const LzReport r = lz_vs_simulation(p, s, opt);
    body << "min_gap_mev = " << format_number(r.gap.gap) << "\n";
    body << "min_gap_time_ps = " << format_number(r.gap.time) << "\n";
    body << "min_gap_manifold = " << label(r.gap.seed) << "\n";
    body << "sweep_rate_mev_per_ps = " << format_number(r.delta_dot) << "\n";
    body << "lz_estimate = " << format_number(r.lz_estimate) << "\n";
    body << "simulated_leakage = " << format_number(r.simulated_leakage) << "\n";
  }
  Sink sink(cfg.output_path(), out);
  auto& os = sink.stream();
  write_header(os, Command::lz, echo);
  os << body.str();
}

}  // namespace

int run(const RunConfig& cfg, int threads, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command()) {
      case Command::mixing: cmd_mixing(cfg, out, err); break;
      case Command::table: cmd_table(cfg, out); break;
      case Command::spectrum: cmd_spectrum(cfg, threads, out); break;
      case Command::gate: cmd_gate(cfg, threads, out); break;
      case Command::populations: cmd_populations(cfg, threads, out); break;
      case Command::optimize: cmd_optimize(cfg, threads, out); break;
      case Command::lz: cmd_lz(cfg, threads, out); break;
    }
    out.flush();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::domain_error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  }
}

int run_cli(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = RunConfig::parse_file(opts.config_path);
    if (opts.command) {
      const auto c = parse_command(*opts.command);
      if (!c) throw ConfigError(fmt::format("--command: unknown command '{}'", *opts.command));
      cfg.set_command(*c);
    }
    if (opts.output) cfg.set_output_path(*opts.output);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return run(cfg, opts.threads, out, err);
}

}  // namespace qdgate
