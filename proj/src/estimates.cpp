#include "qdgate/estimates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qdgate {

double lz_probability(const LZInput& in) {
  if (!(in.delta_dot > 0.0)) throw std::invalid_argument("Landau-Zener sweep rate must be positive");
  if (!(in.omega_gap >= 0.0)) throw std::invalid_argument("Landau-Zener gap must be non-negative");
  return std::exp(-kPi * in.omega_gap * in.omega_gap / (4.0 * kHbar * in.delta_dot));
}

double phonon_suppression(const PhononEstimate& e) {
  if (!(e.omega > 0.0)) throw std::invalid_argument("phonon estimate needs omega > 0");
  return e.j_at_cutoff / e.omega * std::exp(-e.lambda * e.omega * e.tau / kHbar);
}

double max_sweep_rate(const PulseSchedule& s) {
  return std::abs(s.delta0) * std::exp(-0.5) / (std::sqrt(2.0) * s.tau_delta);
}

AdiabaticGap min_adiabatic_gap(const PhysicalParams& p, const PulseSchedule& s, int samples) {
  if (samples < 2) throw std::invalid_argument("gap search needs at least two samples");
  const DriveModel model(p);
  AdiabaticGap best;
  best.gap = std::numeric_limits<double>::infinity();
  for (const Manifold& m : manifolds()) {
    std::array<int, 4> idx;
    int seed_pos = 0;
    for (int i = 0; i < 4; ++i) {
      idx[i] = m.members[i].index();
      if (m.members[i] == m.seed) seed_pos = i;
    }
    Eigen::Vector4d followed = Eigen::Vector4d::Unit(seed_pos);
    for (int k = 0; k < samples; ++k) {
      const double t = s.t_start + (s.t_end - s.t_start) * k / (samples - 1);
      const RealOperator16 h = model.at(rabi_envelope(t, s), detuning(t, s));
      Eigen::Matrix4d block;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) block(i, j) = h(idx[i], idx[j]);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(block);
      int level = 0;
      (solver.eigenvectors().transpose() * followed).cwiseAbs().maxCoeff(&level);
      followed = solver.eigenvectors().col(level);
      const auto& e = solver.eigenvalues();
      double gap = std::numeric_limits<double>::infinity();
      if (level > 0) gap = std::min(gap, e(level) - e(level - 1));
      if (level < 3) gap = std::min(gap, e(level + 1) - e(level));
      if (gap < best.gap) best = {gap, t, m.seed};
    }
  }
  return best;
}

LzReport lz_vs_simulation(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt) {
  LzReport r;
  r.gap = min_adiabatic_gap(p, s);
  r.delta_dot = max_sweep_rate(s);
  r.lz_estimate = r.delta_dot > 0.0 ? lz_probability({r.gap.gap, r.delta_dot}) : 0.0;
  const auto leak = final_leakage(p, s, opt);
  r.simulated_leakage = *std::max_element(leak.begin(), leak.end());
  return r;
}

}  // namespace qdgate
