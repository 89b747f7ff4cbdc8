#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdgate/drive_model.hpp"
#include "qdgate/luttinger_kohn.hpp"
#include "qdgate/optimizer.hpp"

namespace qdgate {

enum class Command { mixing, table, spectrum, gate, populations, optimize, lz };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Resolved (key, value) pairs echoed into output headers.
using Echo = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` configuration with dotted keys. Lines starting with
/// '#' and blank lines are ignored; unknown or repeated keys are errors.
class RunConfig {
 public:
  static RunConfig parse(std::istream& in, const std::string& source = "<config>");
  static RunConfig parse_file(const std::string& path);

  /// Every key the parser accepts.
  static const std::vector<std::string>& known_keys();

  /// Throws ConfigError when no command is set.
  Command command() const;
  void set_command(Command c) { command_ = c; }
  const std::string& output_path() const { return output_path_; }
  void set_output_path(std::string p) { output_path_ = std::move(p); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  lk::LuttingerParams luttinger(Echo& echo) const;
  lk::TrapFrequencies trap(Echo& echo) const;
  foerster::ForsterCouplings couplings(Echo& echo) const;
  PhysicalParams physical(Echo& echo) const;
  PulseSchedule pulse(Echo& echo) const;
  std::vector<double> spectrum_ratios(Echo& echo) const;
  double spectrum_omega(Echo& echo) const;
  long series_stride(Echo& echo) const;
  OptimizerConfig optimizer(Echo& echo) const;

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  bool boolean_or(const std::string& key, bool fallback) const;

 private:
  std::map<std::string, std::string> entries_;
  std::optional<Command> command_;
  std::string output_path_;
};

/// Fixed 12-significant-digit rendering used in every output file.
std::string format_number(double v);

}  // namespace qdgate
