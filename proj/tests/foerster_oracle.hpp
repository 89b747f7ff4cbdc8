#pragma once

#include <cmath>
#include <vector>

#include "qdgate/foerster.hpp"

namespace qdgate::testing {

using foerster::Axis;
using foerster::Band;
using foerster::DipoleLengths;
using foerster::ExcitonAM;
using foerster::ForsterScale;
using foerster::Orbital;

// A valence Bloch function as a sum of coefficient * orbital * spin.
struct BlochTerm {
  Complex coef;
  Orbital orbital;
  bool spin_up;
};

inline std::vector<BlochTerm> valence(int twice_jz) {
  const Complex i(0.0, 1.0);
  const double r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
  switch (twice_jz) {
    case 3: return {{r2, Orbital::X, true}, {i * r2, Orbital::Y, true}};
    case -3: return {{r2, Orbital::X, false}, {-i * r2, Orbital::Y, false}};
    case 1: return {{r6, Orbital::X, false}, {i * r6, Orbital::Y, false}, {-2.0 * r6, Orbital::Z, true}};
    case -1: return {{r6, Orbital::X, true}, {-i * r6, Orbital::Y, true}, {2.0 * r6, Orbital::Z, false}};
  }
  return {};
}

// Interband dipole <r> of an exciton, per unit radial length. The valence
// component carrying the spin opposite to the electron label contributes.
inline Eigen::Vector3cd dipole(const ExcitonAM& x) {
  const bool spin_up = x.twice_electron() < 0;
  Eigen::Vector3cd d = Eigen::Vector3cd::Zero();
  for (const BlochTerm& t : valence(x.twice_hole())) {
    if (t.spin_up != spin_up) continue;
    d(0) += t.coef * foerster::angular_integral(t.orbital, Axis::x);
    d(1) += t.coef * foerster::angular_integral(t.orbital, Axis::y);
    d(2) += t.coef * foerster::angular_integral(t.orbital, Axis::z);
  }
  return d;
}

// Dipole-dipole transfer energy for dots separated by R along `axis`.
inline Complex oracle_element(const ExcitonAM& s1, const ExcitonAM& s2, const ForsterScale& scale, const DipoleLengths& l,
                      const Eigen::Vector3d& axis) {
  auto length = [&l](const ExcitonAM& x) { return x.band() == Band::hh ? l.l_hh : l.l_lh; };
  const Eigen::Vector3cd d1 = dipole(s1) * length(s1);
  const Eigen::Vector3cd d2 = dipole(s2) * length(s2);
  const Eigen::Vector3cd n = axis.normalized().cast<Complex>();
  const Complex contraction = d1.dot(d2) - 3.0 * d1.dot(n) * n.dot(d2);
  const double r3 = std::pow(scale.distance_nm, 3);
  const double prefactor = foerster::kCoulombConstant / (scale.eps_r * r3) * scale.overlap_1 * scale.overlap_2;
  return prefactor * contraction;
}

inline std::vector<ExcitonAM> all_excitons() {
  std::vector<ExcitonAM> out;
  for (int h : {3, 1, -1, -3})
    for (int e : {1, -1}) out.emplace_back(h, e);
  return out;
}

}  // namespace qdgate::testing
