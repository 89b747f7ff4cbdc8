#pragma once

#include <array>
#include <span>
#include <vector>

#include "qdgate/basis.hpp"
#include "qdgate/common.hpp"
#include "qdgate/foerster.hpp"

namespace qdgate {

/// Chirped pulse: Ω(t) = Ω0 exp(-(t/τΩ)²), Δ(t) = -Δ0 (1 - exp(-(t/τΔ)²)/2),
/// integrated on a uniform grid from t_start to t_end.
struct PulseSchedule {
  double omega0 = 0.0;     // meV
  double tau_omega = 1.0;  // ps
  double delta0 = 0.0;     // meV
  double tau_delta = 1.0;  // ps
  double t_start = -4.0;   // ps
  double t_end = 4.0;      // ps
  double dt = 0.001;       // ps

  /// Schedule on the default window ±4 max(τΩ, τΔ).
  static PulseSchedule with_default_window(double omega0, double tau_omega, double delta0, double tau_delta,
                                           double dt = 0.001);

  /// Throws std::invalid_argument when a structural invariant fails.
  void validate() const;

  /// Number of dt steps from t_start to t_end.
  long steps() const;
  double time_at(long step) const { return t_start + static_cast<double>(step) * dt; }

  /// Copy with τΩ, τΔ and the window scaled by `factor`.
  PulseSchedule time_scaled(double factor) const;
};

struct PhysicalParams {
  double delta = 0.0;      // Zeeman splitting, meV
  double eps = 0.0;        // hole mixing
  double eps_tilde = 0.0;  // optical mixing ε l_lh / (l_hh √3)
  foerster::ForsterCouplings couplings;
  double vxx = 0.0;  // biexcitonic shift, meV
  double offset_a = 0.0;
  double offset_b = 0.0;

  void validate() const;
};

double rabi_envelope(double t, const PulseSchedule& s);
double detuning(double t, const PulseSchedule& s);

/// Laser coupling on one dot in the rotating frame:
/// (Ω/2)(|1><x+| + ε̃ |0><x-| + h.c.) tensored with identity on the other dot.
Operator16 light_coupling_rwa(double omega, double eps_tilde, Dot dot);

/// Rotating-frame Hamiltonian split into its static part and the two
/// drive-dependent pieces: H = H_static + Ω L + Δ P_trion.
class DriveModel {
 public:
  explicit DriveModel(const PhysicalParams& p);

  /// H for instantaneous Rabi amplitude `omega` and common detuning `det`.
  RealOperator16 at(double omega, double det) const;
  void assemble(double omega, double det, RealOperator16& out) const;

  const PhysicalParams& params() const { return params_; }

 private:
  PhysicalParams params_;
  RealOperator16 static_;
  RealOperator16 light_;
  RealOperator16 trions_;
};

/// Full Hamiltonian at time t.
Operator16 build_total(double t, const PhysicalParams& p, const PulseSchedule& s);

/// Hamiltonian for a static Rabi amplitude and detuning.
Operator16 build_static(const PhysicalParams& p, double omega, double det);

struct SpectrumPoint {
  double ratio;
  std::array<double, kBasisSize> energies;  // ascending
};

/// Sorted eigenvalues of the static Hamiltonian with Ω = `omega_fixed` and
/// Δ = ratio Ω for every grid ratio. Throws std::invalid_argument on an
/// empty grid.
std::vector<SpectrumPoint> spectrum_sweep(const PhysicalParams& p, double omega_fixed,
                                          std::span<const double> ratio_grid, int threads = 1);

/// Largest |eigenvalue| of a Hermitian operator.
double spectral_radius(const RealOperator16& h);

}  // namespace qdgate
