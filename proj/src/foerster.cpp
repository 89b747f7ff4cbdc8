#include "qdgate/foerster.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qdgate::foerster {

ExcitonAM::ExcitonAM(int twice_jz_hole, int twice_jz_electron)
    : hole_(twice_jz_hole), electron_(twice_jz_electron) {
  const bool hole_ok = hole_ == 3 || hole_ == 1 || hole_ == -1 || hole_ == -3;
  const bool electron_ok = electron_ == 1 || electron_ == -1;
  if (!hole_ok || !electron_ok) {
    throw std::invalid_argument("invalid exciton angular momentum (2Jz_h=" + std::to_string(hole_) +
                                ", 2Jz_e=" + std::to_string(electron_) + ")");
  }
}

ForsterCouplings ForsterCouplings::from_scale(const ForsterScale& scale, const DipoleLengths& l) {
  return {m_ij(scale, l, Band::hh, Band::hh), m_ij(scale, l, Band::lh, Band::lh),
          m_ij(scale, l, Band::lh, Band::hh)};
}

namespace {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double orbital_value(Orbital o, double cos_t, double sin_t, double phi) {
  const double norm = std::sqrt(3.0 / (4.0 * kPi));
  switch (o) {
    case Orbital::X: return norm * sin_t * std::cos(phi);
    case Orbital::Y: return norm * sin_t * std::sin(phi);
    case Orbital::Z: return norm * cos_t;
  }
  return 0.0;
}

double axis_value(Axis a, double cos_t, double sin_t, double phi) {
  switch (a) {
    case Axis::x: return sin_t * std::cos(phi);
    case Axis::y: return sin_t * std::sin(phi);
    case Axis::z: return cos_t;
  }
  return 0.0;
}

}  // namespace

double angular_integral(Orbital orbital, Axis axis) {
  static const GaussRule rule = gauss_legendre(24);
  constexpr int n_phi = 48;
  const double s_orbital = 1.0 / std::sqrt(4.0 * kPi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double cos_t = rule.nodes[i];
    const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
    double ring = 0.0;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * kPi * k / n_phi;
      ring += orbital_value(orbital, cos_t, sin_t, phi) * axis_value(axis, cos_t, sin_t, phi) * s_orbital;
    }
    sum += rule.weights[i] * ring * (2.0 * kPi / n_phi);
  }
  return sum;
}

double m_ij(const ForsterScale& scale, const DipoleLengths& l, Band i, Band j) {
  if (!(scale.distance_nm > 0.0)) throw std::invalid_argument("inter-dot distance R must be positive");
  if (!(scale.eps_r >= 1.0)) throw std::invalid_argument("relative permittivity must be >= 1");
  if (std::abs(scale.overlap_1) > 1.0 || std::abs(scale.overlap_2) > 1.0)
    throw std::invalid_argument("envelope overlaps must lie in [-1, 1]");
  if (!(l.l_hh > 0.0 && l.l_lh > 0.0)) throw std::invalid_argument("dipole lengths must be positive");
  auto length = [&l](Band b) { return b == Band::hh ? l.l_hh : l.l_lh; };
  const double r3 = scale.distance_nm * scale.distance_nm * scale.distance_nm;
  return kCoulombConstant / (3.0 * scale.eps_r * r3) * scale.overlap_1 * scale.overlap_2 * length(i) * length(j);
}

namespace {

const std::array<TransferTableRow, 9>& rows() {
  static const std::array<TransferTableRow, 9> table{{
      {{-3, 1}, {-3, 1}, "M_hh,hh", 1.0, Band::hh, Band::hh},
      {{3, -1}, {3, -1}, "M_hh,hh", 1.0, Band::hh, Band::hh},
      {{-1, 1}, {-1, 1}, "-4M_lh,lh/3", -4.0 / 3.0, Band::lh, Band::lh},
      {{1, -1}, {1, -1}, "-4M_lh,lh/3", -4.0 / 3.0, Band::lh, Band::lh},
      {{-1, 1}, {1, -1}, "4M_lh,lh/3", 4.0 / 3.0, Band::lh, Band::lh},
      {{-1, -1}, {-1, -1}, "M_lh,lh/3", 1.0 / 3.0, Band::lh, Band::lh},
      {{1, 1}, {1, 1}, "M_lh,lh/3", 1.0 / 3.0, Band::lh, Band::lh},
      {{-3, 1}, {-1, -1}, "M_lh,hh/sqrt(3)", 1.0 / std::sqrt(3.0), Band::lh, Band::hh},
      {{3, -1}, {1, 1}, "M_lh,hh/sqrt(3)", 1.0 / std::sqrt(3.0), Band::lh, Band::hh},
  }};
  return table;
}

double coupling(const ForsterCouplings& c, Band i, Band j) {
  if (i == Band::hh && j == Band::hh) return c.hh_hh;
  if (i == Band::lh && j == Band::lh) return c.lh_lh;
  return c.lh_hh;
}

// Pure-Jz hole components of a trion, as (2Jz, amplitude) pairs.
struct HoleComponent {
  int twice_jz;
  double amplitude;
};

std::array<HoleComponent, 2> hole_components(DotState trion, double eps, HoleWeighting w) {
  const double major = w == HoleWeighting::unit_major ? 1.0 : std::sqrt(1.0 - eps * eps);
  if (trion == DotState::Xplus) return {{{3, major}, {-1, eps}}};
  return {{{-3, major}, {1, eps}}};
}

// 2Jz of the resident electron for a qubit state.
int electron_spin(DotState qubit) { return qubit == DotState::Q1 ? 1 : -1; }

}  // namespace

std::span<const TransferTableRow> transfer_table_rows() { return rows(); }

double transfer_table_element(const ExcitonAM& s1, const ExcitonAM& s2, const ForsterCouplings& c) {
  if (s1.net_jz() != s2.net_jz()) return 0.0;
  for (const TransferTableRow& row : rows()) {
    if ((row.state1 == s1 && row.state2 == s2) || (row.state1 == s2 && row.state2 == s1))
      return row.coefficient * coupling(c, row.i, row.j);
  }
  return 0.0;
}

double trion_transfer_element(TwoDotState bra, TwoDotState ket, double eps, const ForsterCouplings& c,
                              HoleWeighting weighting) {
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("hole mixing |eps| must be below 1");
  // The exciton moves from dot `from` (trion in ket, qubit in bra) to dot
  // `to` (qubit in ket, trion in bra).
  for (Dot to : {Dot::a, Dot::b}) {
    const Dot from = to == Dot::a ? Dot::b : Dot::a;
    const DotState ket_to = ket.on(to), ket_from = ket.on(from);
    const DotState bra_to = bra.on(to), bra_from = bra.on(from);
    if (is_trion(ket_to) || !is_trion(ket_from) || !is_trion(bra_to) || is_trion(bra_from)) continue;

    // The created pair must carry the electron opposite to the resident one
    // on `to`; the removed pair leaves behind the electron seen in the bra.
    const int created_electron = -electron_spin(ket_to);
    const int removed_electron = -electron_spin(bra_from);
    double sum = 0.0;
    for (const HoleComponent& in : hole_components(ket_from, eps, weighting)) {
      for (const HoleComponent& out : hole_components(bra_to, eps, weighting)) {
        sum += in.amplitude * out.amplitude *
               transfer_table_element(ExcitonAM(out.twice_jz, created_electron), ExcitonAM(in.twice_jz, removed_electron), c);
      }
    }
    return sum;
  }
  return 0.0;
}

Operator16 build_hf(double eps, const ForsterCouplings& c, HfOrder order, HoleWeighting weighting) {
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("hole mixing |eps| must be below 1");
  Operator16 h = Operator16::Zero();
  if (order == HfOrder::exact) {
    for (TwoDotState bra : enumerate_basis())
      for (TwoDotState ket : enumerate_basis())
        h(bra.index(), ket.index()) = trion_transfer_element(bra, ket, eps, c, weighting);
    return h;
  }
  using enum DotState;
  auto link = [&h](TwoDotState x, TwoDotState y, double v) {
    h(x.index(), y.index()) += v;
    h(y.index(), x.index()) += v;
  };
  const double mixed = 2.0 * c.lh_hh * eps / std::sqrt(3.0);
  link({Q0, Xminus}, {Xminus, Q0}, c.hh_hh);
  link({Q1, Xplus}, {Xplus, Q1}, c.hh_hh);
  link({Q1, Xminus}, {Xplus, Q0}, mixed);
  link({Xminus, Q1}, {Q0, Xplus}, mixed);
  return h;
}

}  // namespace qdgate::foerster
