#pragma once

#include <array>

#include <Eigen/Dense>

#include "qdgate/common.hpp"

namespace qdgate::lk {

/// ħ²/2m0 in meV nm².
inline constexpr double kFreeElectronKinetic = 38.09982;

struct LuttingerParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;

  /// Throws std::invalid_argument unless gamma1 > 0 and gamma1 > 2 gamma2.
  void validate() const;
};

/// Trap frequencies given directly as ħω in meV.
struct TrapFrequencies {
  double omega_x = 0.0;
  double omega_y = 0.0;
  double omega_z = 0.0;

  void validate() const;
  double total() const { return omega_x + omega_y + omega_z; }
};

/// Envelope expectation values <k>, in nm^-1.
struct KVector {
  double kx = 0.0;
  double ky = 0.0;
  double kz = 0.0;
};

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

/// Four-band bulk Hamiltonian in the basis {+3/2, +1/2, -1/2, -3/2}.
/// `kinetic_scale` is ħ²/2m0 in meV nm².
Matrix4c bulk_hamiltonian(const LuttingerParams& p, const KVector& k,
                          double kinetic_scale = kFreeElectronKinetic);

/// Heavy-light diagonal offset ΔE_h = (ωT - 3ωz) γ2/γ1.
double heavy_light_offset(const LuttingerParams& p, const TrapFrequencies& w);

/// Axial sub-band coupling W = √3 (γ2+γ3)/2 (ωx - ωy).
double subband_coupling(const LuttingerParams& p, const TrapFrequencies& w);

/// Confined 2x2 block in the {+3/2, -1/2} (equivalently {-3/2, +1/2}) basis:
/// (1/4) [[2ωT + ΔE_h, W], [W, 2ωT - ΔE_h]].
Eigen::Matrix2d parabolic_block(const LuttingerParams& p, const TrapFrequencies& w);

struct MixingEstimate {
  double epsilon = 0.0;
  /// 2|ΔE_h| / |W|; the first-order estimate needs this to be large.
  double validity_ratio = 0.0;

  bool perturbative() const { return validity_ratio >= 5.0; }
};

/// ε ≈ W / (2 ΔE_h). Throws std::domain_error when ΔE_h = 0.
MixingEstimate mixing_epsilon(const LuttingerParams& p, const TrapFrequencies& w);

/// tan(atan(W/ΔE_h)/2), from the exact rotation that diagonalizes the block.
double exact_mixing_epsilon(const LuttingerParams& p, const TrapFrequencies& w);

/// Eigenvalue gap of the parabolic block, (1/2) sqrt(ΔE_h² + W²).
double heavy_light_splitting(const LuttingerParams& p, const TrapFrequencies& w);

enum class HoleKind { h_plus, h_minus, hprime_plus, hprime_minus };

/// Amplitudes over {+3/2, +1/2, -1/2, -3/2}.
struct MixedHoleState {
  HoleKind kind;
  double eps;
  Eigen::Vector4d amplitudes;
};

/// h+, h-, h'+, h'- for mixing ε. Throws std::invalid_argument if |ε| >= 1.
std::array<MixedHoleState, 4> hole_eigenstates(double eps);

}  // namespace qdgate::lk
