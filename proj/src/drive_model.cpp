#include "qdgate/drive_model.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qdgate/parallel.hpp"

namespace qdgate {

PulseSchedule PulseSchedule::with_default_window(double omega0, double tau_omega, double delta0,
                                                 double tau_delta, double dt) {
  const double half = 4.0 * std::max(tau_omega, tau_delta);
  return {omega0, tau_omega, delta0, tau_delta, -half, half, dt};
}

void PulseSchedule::validate() const {
  if (!(tau_omega > 0.0)) throw std::invalid_argument("pulse tau_omega must be positive");
  if (!(tau_delta > 0.0)) throw std::invalid_argument("pulse tau_delta must be positive");
  if (!(t_start < 0.0 && 0.0 < t_end)) throw std::invalid_argument("pulse window must satisfy t_start < 0 < t_end");
  if (!(dt > 0.0)) throw std::invalid_argument("pulse dt must be positive");
  if (!std::isfinite(omega0) || !std::isfinite(delta0)) throw std::invalid_argument("pulse amplitudes must be finite");
}

long PulseSchedule::steps() const { return std::lround((t_end - t_start) / dt); }

PulseSchedule PulseSchedule::time_scaled(double factor) const {
  PulseSchedule out = *this;
  out.tau_omega *= factor;
  out.tau_delta *= factor;
  out.t_start *= factor;
  out.t_end *= factor;
  return out;
}

void PhysicalParams::validate() const {
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("hole mixing |eps| must be below 1");
  if (!(std::abs(eps_tilde) < 1.0)) throw std::invalid_argument("optical mixing |eps_tilde| must be below 1");
  for (double v : {delta, couplings.hh_hh, couplings.lh_lh, couplings.lh_hh, vxx, offset_a, offset_b})
    if (!std::isfinite(v)) throw std::invalid_argument("physical parameters must be finite");
}

double rabi_envelope(double t, const PulseSchedule& s) {
  const double x = t / s.tau_omega;
  return s.omega0 * std::exp(-x * x);
}

double detuning(double t, const PulseSchedule& s) {
  const double x = t / s.tau_delta;
  return -s.delta0 * (1.0 - 0.5 * std::exp(-x * x));
}

namespace {

RealOperator16 light_real(double omega, double eps_tilde, Dot dot) {
  using enum DotState;
  RealOperator16 h = RealOperator16::Zero();
  auto link = [&h](TwoDotState x, TwoDotState y, double v) {
    h(x.index(), y.index()) += v;
    h(y.index(), x.index()) += v;
  };
  for (DotState other : {Q0, Q1, Xplus, Xminus}) {
    if (dot == Dot::a) {
      link({Q1, other}, {Xplus, other}, 0.5 * omega);
      link({Q0, other}, {Xminus, other}, 0.5 * eps_tilde * omega);
    } else {
      link({other, Q1}, {other, Xplus}, 0.5 * omega);
      link({other, Q0}, {other, Xminus}, 0.5 * eps_tilde * omega);
    }
  }
  return h;
}

}  // namespace

Operator16 light_coupling_rwa(double omega, double eps_tilde, Dot dot) {
  return light_real(omega, eps_tilde, dot).cast<Complex>();
}

DriveModel::DriveModel(const PhysicalParams& p) : params_(p) {
  p.validate();
  static_ = foerster::build_hf(p.eps, p.couplings, foerster::HfOrder::first_order).real();
  trions_.setZero();
  for (TwoDotState s : enumerate_basis()) {
    double e = 0.0;
    if (s.dot_a == DotState::Q1) e += p.delta;
    if (s.dot_b == DotState::Q1) e += p.delta;
    if (is_trion(s.dot_a)) {
      e += p.offset_a;
      trions_(s.index(), s.index()) += 1.0;
    }
    if (is_trion(s.dot_b)) {
      e += p.offset_b;
      trions_(s.index(), s.index()) += 1.0;
    }
    if (s.trion_count() == 2) e += p.vxx;
    static_(s.index(), s.index()) += e;
  }
  light_ = light_real(1.0, p.eps_tilde, Dot::a) + light_real(1.0, p.eps_tilde, Dot::b);
}

void DriveModel::assemble(double omega, double det, RealOperator16& out) const {
  out = static_ + omega * light_ + det * trions_;
}

RealOperator16 DriveModel::at(double omega, double det) const {
  RealOperator16 h;
  assemble(omega, det, h);
  return h;
}

Operator16 build_total(double t, const PhysicalParams& p, const PulseSchedule& s) {
  return DriveModel(p).at(rabi_envelope(t, s), detuning(t, s)).cast<Complex>();
}

Operator16 build_static(const PhysicalParams& p, double omega, double det) {
  return DriveModel(p).at(omega, det).cast<Complex>();
}

std::vector<SpectrumPoint> spectrum_sweep(const PhysicalParams& p, double omega_fixed,
                                          std::span<const double> ratio_grid, int threads) {
  if (ratio_grid.empty()) throw std::invalid_argument("spectrum sweep needs a nonempty ratio grid");
  const DriveModel model(p);
  std::vector<SpectrumPoint> out(ratio_grid.size());
  parallel_for(ratio_grid.size(), threads, [&](std::size_t i) {
    const double ratio = ratio_grid[i];
    Eigen::SelfAdjointEigenSolver<RealOperator16> solver(model.at(omega_fixed, ratio * omega_fixed),
                                                         Eigen::EigenvaluesOnly);
    out[i].ratio = ratio;
    for (int k = 0; k < kBasisSize; ++k) out[i].energies[k] = solver.eigenvalues()(k);
  });
  return out;
}

double spectral_radius(const RealOperator16& h) {
  Eigen::SelfAdjointEigenSolver<RealOperator16> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qdgate
