#include "qdgate/luttinger_kohn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdgate::lk {

void LuttingerParams::validate() const {
  if (!(gamma1 > 0.0)) throw std::invalid_argument("gamma1 must be positive");
  if (!(gamma1 > 2.0 * gamma2)) throw std::invalid_argument("gamma1 must exceed 2*gamma2");
}

void TrapFrequencies::validate() const {
  if (!(omega_x > 0.0 && omega_y > 0.0 && omega_z > 0.0))
    throw std::invalid_argument("trap frequencies must be strictly positive");
}

Matrix4c bulk_hamiltonian(const LuttingerParams& p, const KVector& k, double kinetic_scale) {
  const double s = kinetic_scale;
  const double kperp2 = k.kx * k.kx + k.ky * k.ky;
  const double kz2 = k.kz * k.kz;
  const double sqrt3 = std::sqrt(3.0);

  const double h_hh = s * (kz2 * (p.gamma1 - 2.0 * p.gamma2) + kperp2 * (p.gamma1 + p.gamma2));
  const double h_lh = s * (kz2 * (p.gamma1 + 2.0 * p.gamma2) + kperp2 * (p.gamma1 - p.gamma2));
  const Complex c = sqrt3 * s * Complex(p.gamma2 * (k.kx * k.kx - k.ky * k.ky), -2.0 * p.gamma3 * k.kx * k.ky);
  // √3 ħ²/m0 = 2√3 s
  const Complex b = 2.0 * sqrt3 * s * p.gamma3 * k.kz * Complex(k.kx, -k.ky);

  Matrix4c h = Matrix4c::Zero();
  h << h_hh, -b, -c, 0.0,
       -std::conj(b), h_lh, 0.0, -c,
       -std::conj(c), 0.0, h_lh, b,
       0.0, -std::conj(c), std::conj(b), h_hh;
  return h;
}

double heavy_light_offset(const LuttingerParams& p, const TrapFrequencies& w) {
  return (w.total() - 3.0 * w.omega_z) * p.gamma2 / p.gamma1;
}

double subband_coupling(const LuttingerParams& p, const TrapFrequencies& w) {
  return std::sqrt(3.0) * (p.gamma2 + p.gamma3) / 2.0 * (w.omega_x - w.omega_y);
}

Eigen::Matrix2d parabolic_block(const LuttingerParams& p, const TrapFrequencies& w) {
  const double wt = w.total();
  const double de = heavy_light_offset(p, w);
  const double cw = subband_coupling(p, w);
  Eigen::Matrix2d m;
  m << 2.0 * wt + de, cw,
       cw, 2.0 * wt - de;
  return 0.25 * m;
}

MixingEstimate mixing_epsilon(const LuttingerParams& p, const TrapFrequencies& w) {
  const double de = heavy_light_offset(p, w);
  if (de == 0.0) throw std::domain_error("heavy and light hole sub-bands are degenerate (dE_h = 0)");
  const double cw = subband_coupling(p, w);
  MixingEstimate out;
  out.epsilon = cw / (2.0 * de);
  out.validity_ratio = cw == 0.0 ? std::numeric_limits<double>::infinity() : 2.0 * std::abs(de) / std::abs(cw);
  return out;
}

double exact_mixing_epsilon(const LuttingerParams& p, const TrapFrequencies& w) {
  const double de = heavy_light_offset(p, w);
  if (de == 0.0) throw std::domain_error("heavy and light hole sub-bands are degenerate (dE_h = 0)");
  return std::tan(0.5 * std::atan(subband_coupling(p, w) / de));
}

double heavy_light_splitting(const LuttingerParams& p, const TrapFrequencies& w) {
  return 0.5 * std::hypot(heavy_light_offset(p, w), subband_coupling(p, w));
}

std::array<MixedHoleState, 4> hole_eigenstates(double eps) {
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("hole mixing |eps| must be below 1");
  const double major = std::sqrt(1.0 - eps * eps);
  // basis order {+3/2, +1/2, -1/2, -3/2}
  return {{
      {HoleKind::h_plus, eps, Eigen::Vector4d(major, 0.0, eps, 0.0)},
      {HoleKind::h_minus, eps, Eigen::Vector4d(0.0, eps, 0.0, major)},
      {HoleKind::hprime_plus, eps, Eigen::Vector4d(0.0, major, 0.0, -eps)},
      {HoleKind::hprime_minus, eps, Eigen::Vector4d(-eps, 0.0, major, 0.0)},
  }};
}

}  // namespace qdgate::lk
