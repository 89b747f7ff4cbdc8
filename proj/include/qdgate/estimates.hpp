#pragma once

#include "qdgate/drive_model.hpp"
#include "qdgate/propagator.hpp"

namespace qdgate {

/// Linear sweep through an avoided crossing.
struct LZInput {
  double omega_gap = 0.0;  // level separation at closest approach, meV
  double delta_dot = 0.0;  // sweep rate, meV/ps
};

/// exp(-π Ω² / (4 ħ Δ̇)). Throws std::invalid_argument for Δ̇ <= 0 or Ω < 0.
double lz_probability(const LZInput& in);

struct PhononEstimate {
  double j_at_cutoff = 0.0;  // J(ω_m), meV
  double lambda = 1.0;
  double omega = 0.0;  // meV
  double tau = 0.0;    // ps
};

/// Order-of-magnitude estimate (J/Ω) exp(-λ Ω τ / ħ); not a bound.
/// Throws std::invalid_argument for Ω <= 0.
double phonon_suppression(const PhononEstimate& e);

/// Peak |dΔ/dt| of the chirp, Δ0 e^{-1/2} / (√2 τΔ).
double max_sweep_rate(const PulseSchedule& s);

struct AdiabaticGap {
  double gap = 0.0;   // meV
  double time = 0.0;  // ps, where the minimum occurs
  TwoDotState seed;   // manifold in which it occurs
};

/// Smallest separation between the level connected to each computational
/// state and its neighbours within the same manifold, along the pulse path.
AdiabaticGap min_adiabatic_gap(const PhysicalParams& p, const PulseSchedule& s, int samples = 2001);

struct LzReport {
  AdiabaticGap gap;
  double delta_dot = 0.0;
  double lz_estimate = 0.0;
  double simulated_leakage = 0.0;
};

LzReport lz_vs_simulation(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt = {});

}  // namespace qdgate
