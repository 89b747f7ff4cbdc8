#pragma once

#include <array>

#include "qdgate/drive_model.hpp"

namespace qdgate {

enum class PulseParam { omega0 = 0, delta0 = 1, tau_omega = 2, tau_delta = 3 };

struct OptimizerConfig {
  double w_theta = 1.0;
  double w_leak = 0.01;
  /// Initial simplex edge as a fraction of each parameter.
  double simplex_scale = 0.05;
  int max_evals = 200;
  double tolerance = 1e-4;
  /// Which of (Ω0, Δ0, τΩ, τΔ) the search may move.
  std::array<bool, 4> free{true, true, true, true};
  int threads = 1;

  void validate() const;
};

struct PulseEvaluation {
  double theta = 0.0;
  double theta_error = 0.0;  // |θ - π| modulo 2π
  double leakage = 0.0;      // max over the computational inputs
  double objective = 0.0;
  bool valid = true;         // false when the simulation could not define θ
};

/// w_θ (θ - π)² + w_leak max leakage, with θ compared modulo 2π.
PulseEvaluation evaluate_pulse(const PhysicalParams& p, const PulseSchedule& s, const OptimizerConfig& cfg);

struct OptimizeResult {
  PulseSchedule schedule;
  PulseEvaluation achieved;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead search over the free pulse parameters, in log space so every
/// parameter stays positive. Deterministic for a given s0 and cfg.
OptimizeResult optimize_pulse(const PhysicalParams& p, const PulseSchedule& s0, const OptimizerConfig& cfg);

}  // namespace qdgate
