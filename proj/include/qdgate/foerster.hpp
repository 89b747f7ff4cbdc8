#pragma once

#include <span>
#include <string>

#include "qdgate/basis.hpp"
#include "qdgate/common.hpp"

namespace qdgate::foerster {

/// e²/(4π ε0) in meV nm.
inline constexpr double kCoulombConstant = 1439.964548;

enum class Band { hh, lh };

/// Angular momentum of an electron-hole pair, stored as twice the Jz values
/// so that half-integers stay exact.
class ExcitonAM {
 public:
  /// `twice_jz_hole` in {±3, ±1}, `twice_jz_electron` in {±1}.
  ExcitonAM(int twice_jz_hole, int twice_jz_electron);

  int twice_hole() const { return hole_; }
  int twice_electron() const { return electron_; }
  double jz_hole() const { return hole_ / 2.0; }
  double jz_electron() const { return electron_ / 2.0; }
  int net_jz() const { return (hole_ + electron_) / 2; }
  Band band() const { return hole_ == 3 || hole_ == -3 ? Band::hh : Band::lh; }

  friend bool operator==(const ExcitonAM&, const ExcitonAM&) = default;

 private:
  int hole_;
  int electron_;
};

/// Lengths l_i = ∫ f_i(r) r³ g(r) dr, in nm.
struct DipoleLengths {
  double l_hh = 0.0;
  double l_lh = 0.0;
};

struct ForsterScale {
  double eps_r = 1.0;
  double distance_nm = 1.0;
  double overlap_1 = 1.0;
  double overlap_2 = 1.0;
};

/// Transfer amplitudes in meV. Independent fields; derived sets satisfy
/// M_lh_hh² = M_hh_hh M_lh_lh.
struct ForsterCouplings {
  double hh_hh = 0.0;
  double lh_lh = 0.0;
  double lh_hh = 0.0;

  static ForsterCouplings from_scale(const ForsterScale& scale, const DipoleLengths& l);
};

enum class Orbital { X, Y, Z };
enum class Axis { x, y, z };

/// ∫ <r|orbital> r̂_axis <r|S> dΩ per unit radius, by product quadrature on
/// the unit sphere.
double angular_integral(Orbital orbital, Axis axis);

/// M_ij = e²/(12π ε0 εr R³) W1 W2 l_i l_j. Throws std::invalid_argument for
/// R <= 0 or εr < 1.
double m_ij(const ForsterScale& scale, const DipoleLengths& l, Band i, Band j);

/// Transfer matrix element between two exciton configurations; zero when the
/// pair is not linked by the interaction. Symmetric in its state arguments.
double transfer_table_element(const ExcitonAM& s1, const ExcitonAM& s2, const ForsterCouplings& c);

struct TransferTableRow {
  ExcitonAM state1;
  ExcitonAM state2;
  std::string symbolic;
  double coefficient;
  Band i;
  Band j;
};

/// The nine linked pairs, in tabulated order.
std::span<const TransferTableRow> transfer_table_rows();

/// How the dominant heavy-hole amplitude of a mixed trion is weighted when
/// the transfer operator is expanded over pure-Jz excitons.
enum class HoleWeighting {
  /// Dominant amplitude 1, admixture ε (the first-order expansion).
  unit_major,
  /// Dominant amplitude √(1-ε²), admixture ε (normalized hole states).
  normalized,
};

/// <bra|T|ket> for the trion transfer operator, summed over every pure-Jz
/// exciton component of the mixed holes.
double trion_transfer_element(TwoDotState bra, TwoDotState ket, double eps, const ForsterCouplings& c,
                              HoleWeighting weighting = HoleWeighting::unit_major);

enum class HfOrder { first_order, exact };

/// Transfer Hamiltonian on the 16-state basis. `first_order` keeps only the
/// terms linear in ε; `exact` uses every trion_transfer_element.
Operator16 build_hf(double eps, const ForsterCouplings& c, HfOrder order,
                        HoleWeighting weighting = HoleWeighting::unit_major);

}  // namespace qdgate::foerster
