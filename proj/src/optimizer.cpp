#include "qdgate/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qdgate/propagator.hpp"

namespace qdgate {

void OptimizerConfig::validate() const {
  if (!(w_theta > 0.0)) throw std::invalid_argument("optimizer w_theta must be positive");
  if (!(w_leak >= 0.0)) throw std::invalid_argument("optimizer w_leak must be non-negative");
  if (!(simplex_scale > 0.0)) throw std::invalid_argument("optimizer simplex_scale must be positive");
  if (max_evals <= 0) throw std::invalid_argument("optimizer max_evals must be positive");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("optimizer tolerance must be non-negative");
}

PulseEvaluation evaluate_pulse(const PhysicalParams& p, const PulseSchedule& s, const OptimizerConfig& cfg) {
  PulseEvaluation e;
  try {
    GateOptions opt;
    opt.threads = cfg.threads;
    opt.keep_series = false;
    const GateRecord g = gate_phases(p, s, opt);
    e.theta = g.theta_final;
    e.theta_error = wrapped_distance(g.theta_final, kPi);
    e.leakage = g.max_leakage();
    e.objective = cfg.w_theta * e.theta_error * e.theta_error + cfg.w_leak * e.leakage;
  } catch (const NumericalError&) {
    // Candidate outside the region where θ is defined or the step rule holds.
    e.valid = false;
    e.objective = 1e6;
  }
  return e;
}

namespace {

double& field(PulseSchedule& s, PulseParam which) {
  switch (which) {
    case PulseParam::omega0: return s.omega0;
    case PulseParam::delta0: return s.delta0;
    case PulseParam::tau_omega: return s.tau_omega;
    case PulseParam::tau_delta: return s.tau_delta;
  }
  return s.omega0;
}

class PulseSearch {
 public:
  PulseSearch(const PhysicalParams& p, const PulseSchedule& s0, const OptimizerConfig& cfg)
      : params_(p), base_(s0), cfg_(cfg) {
    for (int k = 0; k < 4; ++k)
      if (cfg.free[k]) free_.push_back(static_cast<PulseParam>(k));
  }

  std::size_t dims() const { return free_.size(); }

  std::vector<double> initial_point() {
    std::vector<double> x;
    for (PulseParam f : free_) {
      const double v = field(base_, f);
      if (!(v > 0.0)) throw std::invalid_argument("free pulse parameters must start positive");
      x.push_back(std::log(v));
    }
    return x;
  }

  PulseSchedule schedule(const std::vector<double>& x) const {
    PulseSchedule s = base_;
    for (std::size_t i = 0; i < free_.size(); ++i) field(s, free_[i]) = std::exp(x[i]);
    // Window follows the slower envelope.
    const double stretch = std::max(s.tau_omega, s.tau_delta) / std::max(base_.tau_omega, base_.tau_delta);
    s.t_start = base_.t_start * stretch;
    s.t_end = base_.t_end * stretch;
    return s;
  }

  PulseEvaluation evaluate(const std::vector<double>& x) {
    ++evaluations_;
    return evaluate_pulse(params_, schedule(x), cfg_);
  }

  int evaluations() const { return evaluations_; }

 private:
  PhysicalParams params_;
  PulseSchedule base_;
  OptimizerConfig cfg_;
  std::vector<PulseParam> free_;
  int evaluations_ = 0;
};

struct Vertex {
  std::vector<double> x;
  PulseEvaluation eval;
};

}  // namespace

OptimizeResult optimize_pulse(const PhysicalParams& p, const PulseSchedule& s0, const OptimizerConfig& cfg) {
  cfg.validate();
  s0.validate();
  PulseSearch search(p, s0, cfg);
  const std::size_t n = search.dims();

  auto finish = [&](const Vertex& best) {
    OptimizeResult r;
    r.schedule = search.schedule(best.x);
    r.achieved = best.eval;
    r.evaluations = search.evaluations();
    r.converged = best.eval.valid && best.eval.objective <= cfg.tolerance;
    return r;
  };

  std::vector<Vertex> simplex;
  const std::vector<double> x0 = search.initial_point();
  simplex.push_back({x0, search.evaluate(x0)});
  if (n == 0 || simplex[0].eval.objective <= cfg.tolerance) return finish(simplex[0]);
  for (std::size_t i = 0; i < n && search.evaluations() < cfg.max_evals; ++i) {
    std::vector<double> x = x0;
    x[i] += std::log1p(cfg.simplex_scale);
    simplex.push_back({x, search.evaluate(x)});
  }

  auto by_objective = [](const Vertex& a, const Vertex& b) { return a.eval.objective < b.eval.objective; };
  constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  while (search.evaluations() < cfg.max_evals && simplex.size() == n + 1) {
    std::stable_sort(simplex.begin(), simplex.end(), by_objective);
    if (simplex.front().eval.objective <= cfg.tolerance) break;
    const double spread = simplex.back().eval.objective - simplex.front().eval.objective;
    double size = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d) size = std::max(size, std::abs(simplex[i].x[d] - simplex[0].x[d]));
    if (size < 1e-10 && spread < 1e-14) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i].x[d] / static_cast<double>(n);
    auto along = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + coef * (simplex[n].x[d] - centroid[d]);
      return x;
    };

    Vertex r{along(-reflect), {}};
    r.eval = search.evaluate(r.x);
    if (r.eval.objective < simplex[0].eval.objective) {
      if (search.evaluations() >= cfg.max_evals) {
        simplex[n] = r;
        continue;
      }
      Vertex e{along(-expand), {}};
      e.eval = search.evaluate(e.x);
      simplex[n] = e.eval.objective < r.eval.objective ? e : r;
    } else if (r.eval.objective < simplex[n - 1].eval.objective) {
      simplex[n] = r;
    } else {
      if (search.evaluations() >= cfg.max_evals) break;
      const bool outside = r.eval.objective < simplex[n].eval.objective;
      Vertex c{along(outside ? contract : -contract), {}};
      c.eval = search.evaluate(c.x);
      if (c.eval.objective < std::min(r.eval.objective, simplex[n].eval.objective)) {
        simplex[n] = c;
      } else {
        for (std::size_t i = 1; i <= n && search.evaluations() < cfg.max_evals; ++i) {
          for (std::size_t d = 0; d < n; ++d) simplex[i].x[d] = simplex[0].x[d] + shrink * (simplex[i].x[d] - simplex[0].x[d]);
          simplex[i].eval = search.evaluate(simplex[i].x);
        }
      }
    }
  }
  const auto best = std::min_element(simplex.begin(), simplex.end(), by_objective);
  return finish(*best);
}

}  // namespace qdgate
