#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qdgate/basis.hpp"
#include "qdgate/common.hpp"
#include "qdgate/drive_model.hpp"

namespace qdgate {

/// Largest allowed dt E_max / ħ for the fixed-step integrator.
inline constexpr double kMaxStepPhase = 0.1;

struct PropagationOptions {
  /// Extra time-independent term added to the Hamiltonian.
  std::optional<RealOperator16> extra_static;
  /// Renormalize once | |ψ| - 1 | exceeds this.
  double norm_tolerance = 1e-9;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State16> states;
  TwoDotState initial;
  /// Largest | |ψ| - 1 | seen before any renormalization.
  double max_norm_drift = 0.0;
  long renormalizations = 0;

  const State16& final_state() const { return states.back(); }
};

/// Throws NumericalError if dt E_max / ħ reaches kMaxStepPhase anywhere on
/// the pulse, with E_max the spectral radius of H(t).
void check_step_size(const PhysicalParams& p, const PulseSchedule& s, const PropagationOptions& opt = {});

/// RK4 solution of iħ dψ/dt = H(t) ψ on the schedule grid, starting in a
/// basis state at t_start.
Trajectory propagate(const PhysicalParams& p, const PulseSchedule& s, TwoDotState initial,
                     const PropagationOptions& opt = {});

/// Evolves `psi` from `t_from` to `t_to` in steps of ±s.dt (either
/// direction); the span must be a whole number of steps.
State16 evolve(const PhysicalParams& p, const PulseSchedule& s, const State16& psi, double t_from, double t_to,
               const PropagationOptions& opt = {});

struct GateOptions {
  int threads = 1;
  /// Keep the time series; only final values otherwise.
  bool keep_series = true;
  /// Keep every stride-th grid point in the series (the last point is always kept).
  long stride = 1;
  PropagationOptions propagation;
};

/// Phases and survival populations for the four computational inputs, in the
/// order 00, 01, 10, 11.
struct GateRecord {
  std::vector<double> times;
  std::array<std::vector<double>, 4> phase_series;
  std::array<std::vector<double>, 4> population_series;
  std::vector<double> theta_series;
  std::array<double, 4> final_phase{};
  std::array<double, 4> leakage{};
  double theta_final = 0.0;
  double max_norm_drift = 0.0;

  double max_leakage() const;
};

/// θ = φ00 - φ01 - φ10 + φ11.
double theta_from_phases(std::span<const double, 4> phi);

/// Runs all four computational inputs and unwraps arg <n|ψ_n(t)> step by
/// step. Throws NumericalError naming the time if a survival population
/// drops below 1e-6.
GateRecord gate_phases(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt = {});

struct PopulationReport {
  std::vector<double> times;
  std::array<std::vector<double>, 4> series;
};

PopulationReport populations_report(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt = {});

/// Population that left |n> by T, 1 - |<n|ψ_n(T)>|² / |ψ_n(T)|², for the
/// four computational inputs.
std::array<double, 4> final_leakage(const PhysicalParams& p, const PulseSchedule& s,
                                    const GateOptions& opt = {});

struct CphaseReport {
  double theta = 0.0;
  /// |θ - π| taken modulo 2π.
  double theta_error = 0.0;
  Eigen::Matrix2cd u1;
  Eigen::Matrix2cd u2;
  /// (U1 ⊗ U2) diag(e^{iφ}) in the basis 00, 01, 10, 11.
  Eigen::Matrix4cd corrected;
  /// max |corrected - diag(1, 1, 1, e^{iθ})|.
  double residual = 0.0;
  bool within_tolerance = false;
};

/// Single-qubit corrections that reduce the gate to diag(1, 1, 1, e^{iθ}).
/// Throws NumericalError if any input leaked 5% or more.
CphaseReport cphase_check(const GateRecord& g, double tol);

struct AdiabaticityPoint {
  double factor;
  double max_leakage;
};

/// Maximum leakage with τΩ, τΔ and the window stretched by each factor.
/// Throws std::invalid_argument for a factor below 1.
std::vector<AdiabaticityPoint> adiabaticity_scan(const PhysicalParams& p, const PulseSchedule& s,
                                                 std::span<const double> factors, const GateOptions& opt = {});

}  // namespace qdgate
