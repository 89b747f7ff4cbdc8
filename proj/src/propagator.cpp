#include "qdgate/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qdgate/parallel.hpp"

namespace qdgate {

namespace {

// ψ stored as the 16x2 real matrix [Re ψ, Im ψ].
using SplitState = Eigen::Matrix<double, 16, 2>;

SplitState split(const State16& psi) {
  SplitState x;
  x.col(0) = psi.real();
  x.col(1) = psi.imag();
  return x;
}

State16 join(const SplitState& x) {
  State16 psi;
  psi.real() = x.col(0);
  psi.imag() = x.col(1);
  return psi;
}

struct StepStats {
  double max_norm_drift = 0.0;
  long renormalizations = 0;
};

class Integrator {
 public:
  Integrator(const PhysicalParams& p, const PulseSchedule& s, const PropagationOptions& opt)
      : model_(p), schedule_(s), options_(opt) {}

  void hamiltonian(double t, RealOperator16& h) const {
    model_.assemble(rabi_envelope(t, schedule_), detuning(t, schedule_), h);
    if (options_.extra_static) h += *options_.extra_static;
  }

  // Advances x through `steps` steps of size h_dt from t0, calling
  // observe(k, t_k, x_k) after every step k = 1..steps.
  template <typename Observer>
  StepStats run(SplitState& x, double t0, long steps, double h_dt, Observer&& observe) const {
    StepStats stats;
    RealOperator16 h_now, h_mid, h_next;
    hamiltonian(t0, h_now);
    const double scale = 1.0 / kHbar;
    auto deriv = [scale](const RealOperator16& h, const SplitState& y) {
      SplitState hy = h * y;
      SplitState d;
      d.col(0) = scale * hy.col(1);
      d.col(1) = -scale * hy.col(0);
      return d;
    };
    for (long k = 0; k < steps; ++k) {
      const double t = t0 + static_cast<double>(k) * h_dt;
      const double t_next = t0 + static_cast<double>(k + 1) * h_dt;
      hamiltonian(t + 0.5 * h_dt, h_mid);
      hamiltonian(t_next, h_next);
      const SplitState k1 = deriv(h_now, x);
      const SplitState k2 = deriv(h_mid, x + 0.5 * h_dt * k1);
      const SplitState k3 = deriv(h_mid, x + 0.5 * h_dt * k2);
      const SplitState k4 = deriv(h_next, x + h_dt * k3);
      x += (h_dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

      const double drift = std::abs(std::sqrt(x.squaredNorm()) - 1.0);
      stats.max_norm_drift = std::max(stats.max_norm_drift, drift);
      if (drift > options_.norm_tolerance) {
        x /= std::sqrt(x.squaredNorm());
        ++stats.renormalizations;
      }
      h_now.swap(h_next);
      observe(k + 1, t_next, x);
    }
    return stats;
  }

 private:
  DriveModel model_;
  PulseSchedule schedule_;
  const PropagationOptions& options_;
};

void check_schedule(const PhysicalParams& p, const PulseSchedule& s, const PropagationOptions& opt) {
  s.validate();
  p.validate();
  if (s.steps() < 1) throw std::invalid_argument("pulse window shorter than one step");
  check_step_size(p, s, opt);
}

// Survival amplitudes <n|ψ_n(t_k)> on every grid point, k = 0..steps.
struct SurvivalRun {
  std::vector<Complex> amplitude;
  double final_norm2 = 1.0;
  double max_norm_drift = 0.0;
};

// Population that left |n>, relative to the current norm so that integrator
// damping is not counted as leakage.
double leakage_of(const SplitState& x, int n) {
  const double total = x.squaredNorm();
  const double stay = x(n, 0) * x(n, 0) + x(n, 1) * x(n, 1);
  return std::clamp((total - stay) / total, 0.0, 1.0);
}

SurvivalRun run_survival(const PhysicalParams& p, const PulseSchedule& s, TwoDotState initial,
                         const PropagationOptions& opt) {
  const long steps = s.steps();
  SurvivalRun out;
  out.amplitude.reserve(static_cast<std::size_t>(steps) + 1);
  out.amplitude.emplace_back(1.0, 0.0);
  const int n = initial.index();
  SplitState x = SplitState::Zero();
  x(n, 0) = 1.0;
  Integrator integrator(p, s, opt);
  const StepStats stats = integrator.run(x, s.t_start, steps, s.dt, [&](long, double, const SplitState& y) {
    out.amplitude.emplace_back(y(n, 0), y(n, 1));
  });
  out.final_norm2 = x.squaredNorm();
  out.max_norm_drift = stats.max_norm_drift;
  return out;
}

std::vector<std::size_t> kept_indices(std::size_t count, long stride) {
  const std::size_t step = static_cast<std::size_t>(std::max<long>(stride, 1));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < count; i += step) idx.push_back(i);
  if (idx.back() != count - 1) idx.push_back(count - 1);
  return idx;
}

}  // namespace

void check_step_size(const PhysicalParams& p, const PulseSchedule& s, const PropagationOptions& opt) {
  Integrator integrator(p, s, opt);
  constexpr int samples = 256;
  RealOperator16 h;
  double worst = -1.0, worst_t = 0.0;
  for (int i = 0; i <= samples + 1; ++i) {
    // Sample the window uniformly plus the pulse peak at t = 0.
    const double t = i == samples + 1 ? 0.0 : s.t_start + (s.t_end - s.t_start) * i / samples;
    integrator.hamiltonian(t, h);
    const double e = spectral_radius(h);
    if (e > worst) {
      worst = e;
      worst_t = t;
    }
  }
  const double phase = s.dt * worst / kHbar;
  if (!(phase < kMaxStepPhase)) {
    throw NumericalError(fmt::format("time step dt = {} ps too large: dt*E_max/hbar = {:.4g} at t = {} ps (limit {})",
                                     s.dt, phase, worst_t, kMaxStepPhase));
  }
}

Trajectory propagate(const PhysicalParams& p, const PulseSchedule& s, TwoDotState initial,
                     const PropagationOptions& opt) {
  check_schedule(p, s, opt);
  const long steps = s.steps();
  Trajectory traj;
  traj.initial = initial;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  SplitState x = SplitState::Zero();
  x(initial.index(), 0) = 1.0;
  traj.times.push_back(s.t_start);
  traj.states.push_back(join(x));
  Integrator integrator(p, s, opt);
  const StepStats stats = integrator.run(x, s.t_start, steps, s.dt, [&](long, double t, const SplitState& y) {
    traj.times.push_back(t);
    traj.states.push_back(join(y));
  });
  traj.max_norm_drift = stats.max_norm_drift;
  traj.renormalizations = stats.renormalizations;
  return traj;
}

State16 evolve(const PhysicalParams& p, const PulseSchedule& s, const State16& psi, double t_from, double t_to,
               const PropagationOptions& opt) {
  s.validate();
  p.validate();
  check_step_size(p, s, opt);
  const double span = t_to - t_from;
  const long steps = std::lround(std::abs(span) / s.dt);
  if (std::abs(std::abs(span) - static_cast<double>(steps) * s.dt) > 1e-9 * std::max(1.0, std::abs(span)))
    throw std::invalid_argument("evolve span is not a whole number of steps");
  SplitState x = split(psi);
  Integrator integrator(p, s, opt);
  integrator.run(x, t_from, steps, span >= 0.0 ? s.dt : -s.dt, [](long, double, const SplitState&) {});
  return join(x);
}

double GateRecord::max_leakage() const { return *std::max_element(leakage.begin(), leakage.end()); }

double theta_from_phases(std::span<const double, 4> phi) { return phi[0] - phi[1] - phi[2] + phi[3]; }

GateRecord gate_phases(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt) {
  check_schedule(p, s, opt.propagation);
  const auto inputs = computational_states();
  std::array<SurvivalRun, 4> runs;
  parallel_for(4, opt.threads, [&](std::size_t i) { runs[i] = run_survival(p, s, inputs[i], opt.propagation); });

  const std::size_t count = runs[0].amplitude.size();
  std::array<std::vector<double>, 4> phase;
  for (std::size_t i = 0; i < 4; ++i) {
    phase[i].resize(count);
    double previous = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const Complex a = runs[i].amplitude[k];
      if (std::norm(a) < 1e-6) {
        throw NumericalError(fmt::format("survival population of |{}> fell below 1e-6 at t = {:.6f} ps; phase undefined",
                                         label(inputs[i]), s.time_at(static_cast<long>(k))));
      }
      const double raw = std::arg(a);
      const double unwrapped = k == 0 ? raw : previous + std::remainder(raw - previous, 2.0 * kPi);
      phase[i][k] = unwrapped;
      previous = unwrapped;
    }
  }

  GateRecord g;
  for (std::size_t i = 0; i < 4; ++i) {
    g.final_phase[i] = phase[i].back();
    const double stay = std::norm(runs[i].amplitude.back());
    g.leakage[i] = std::clamp((runs[i].final_norm2 - stay) / runs[i].final_norm2, 0.0, 1.0);
    g.max_norm_drift = std::max(g.max_norm_drift, runs[i].max_norm_drift);
  }
  g.theta_final = theta_from_phases(g.final_phase);
  if (!opt.keep_series) return g;

  for (std::size_t k : kept_indices(count, opt.stride)) {
    g.times.push_back(s.time_at(static_cast<long>(k)));
    const std::array<double, 4> phi{phase[0][k], phase[1][k], phase[2][k], phase[3][k]};
    g.theta_series.push_back(theta_from_phases(phi));
    for (std::size_t i = 0; i < 4; ++i) {
      g.phase_series[i].push_back(phi[i]);
      g.population_series[i].push_back(std::norm(runs[i].amplitude[k]));
    }
  }
  return g;
}

PopulationReport populations_report(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt) {
  check_schedule(p, s, opt.propagation);
  const auto inputs = computational_states();
  std::array<SurvivalRun, 4> runs;
  parallel_for(4, opt.threads, [&](std::size_t i) { runs[i] = run_survival(p, s, inputs[i], opt.propagation); });
  PopulationReport r;
  for (std::size_t k : kept_indices(runs[0].amplitude.size(), opt.stride)) {
    r.times.push_back(s.time_at(static_cast<long>(k)));
    for (std::size_t i = 0; i < 4; ++i) r.series[i].push_back(std::norm(runs[i].amplitude[k]));
  }
  return r;
}

std::array<double, 4> final_leakage(const PhysicalParams& p, const PulseSchedule& s, const GateOptions& opt) {
  check_schedule(p, s, opt.propagation);
  const auto inputs = computational_states();
  std::array<double, 4> out{};
  parallel_for(4, opt.threads, [&](std::size_t i) {
    Integrator integrator(p, s, opt.propagation);
    SplitState x = SplitState::Zero();
    const int n = inputs[i].index();
    x(n, 0) = 1.0;
    integrator.run(x, s.t_start, s.steps(), s.dt, [](long, double, const SplitState&) {});
    out[i] = leakage_of(x, n);
  });
  return out;
}

CphaseReport cphase_check(const GateRecord& g, double tol) {
  const auto inputs = computational_states();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(g.leakage[i] < 0.05)) {
      throw NumericalError(fmt::format("leakage of |{}> is {:.4g}, gate check requires < 0.05", label(inputs[i]),
                                       g.leakage[i]));
    }
  }
  const auto& phi = g.final_phase;
  const Complex i1(0.0, 1.0);
  CphaseReport r;
  r.theta = theta_from_phases(phi);
  r.theta_error = wrapped_distance(r.theta, kPi);
  r.u1 << std::exp(-i1 * phi[0]), 0.0, 0.0, std::exp(-i1 * phi[2]);
  r.u2 << 1.0, 0.0, 0.0, std::exp(i1 * (phi[0] - phi[1]));
  Eigen::Matrix4cd gate = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) gate(k, k) = std::exp(i1 * phi[k]);
  Eigen::Matrix4cd local;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      local.block<2, 2>(2 * a, 2 * b) = r.u1(a, b) * r.u2;
  r.corrected = local * gate;
  Eigen::Matrix4cd target = Eigen::Matrix4cd::Identity();
  target(3, 3) = std::exp(i1 * r.theta);
  r.residual = (r.corrected - target).cwiseAbs().maxCoeff();
  r.within_tolerance = r.theta_error <= tol;
  return r;
}

std::vector<AdiabaticityPoint> adiabaticity_scan(const PhysicalParams& p, const PulseSchedule& s,
                                                 std::span<const double> factors, const GateOptions& opt) {
  for (double f : factors)
    if (!(f >= 1.0)) throw std::invalid_argument(fmt::format("time-scale factor {} is below 1", f));
  std::vector<AdiabaticityPoint> out;
  for (double f : factors) {
    const auto leak = final_leakage(p, s.time_scaled(f), opt);
    out.push_back({f, *std::max_element(leak.begin(), leak.end())});
  }
  return out;
}

}  // namespace qdgate
