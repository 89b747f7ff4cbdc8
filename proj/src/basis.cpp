#include "qdgate/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdgate {

double wrapped_distance(double angle, double target) {
  return std::abs(std::remainder(angle - target, 2.0 * kPi));
}

TwoDotState TwoDotState::from_index(int index) {
  if (index < 0 || index >= kBasisSize) {
    throw std::out_of_range("basis index out of range: " + std::to_string(index));
  }
  return {static_cast<DotState>(index / 4), static_cast<DotState>(index % 4)};
}

std::string label(DotState s) {
  switch (s) {
    case DotState::Q0: return "0";
    case DotState::Q1: return "1";
    case DotState::Xplus: return "x+";
    case DotState::Xminus: return "x-";
  }
  return "?";
}

std::string label(TwoDotState s) { return label(s.dot_a) + label(s.dot_b); }

std::array<TwoDotState, kBasisSize> enumerate_basis() {
  std::array<TwoDotState, kBasisSize> out;
  for (int i = 0; i < kBasisSize; ++i) out[i] = TwoDotState::from_index(i);
  return out;
}

std::array<TwoDotState, 4> computational_states() {
  using enum DotState;
  return {{{Q0, Q0}, {Q0, Q1}, {Q1, Q0}, {Q1, Q1}}};
}

bool Manifold::contains(TwoDotState s) const {
  return std::find(members.begin(), members.end(), s) != members.end();
}

namespace {

using Pattern = std::array<std::array<bool, kBasisSize>, kBasisSize>;

Pattern make_pattern() {
  using enum DotState;
  Pattern p{};
  auto link = [&p](TwoDotState x, TwoDotState y) {
    p[x.index()][y.index()] = true;
    p[y.index()][x.index()] = true;
  };
  // Laser: |1> <-> |x+> and (through hole mixing) |0> <-> |x->, on either dot.
  for (DotState other : {Q0, Q1, Xplus, Xminus}) {
    link({Q1, other}, {Xplus, other});
    link({Q0, other}, {Xminus, other});
    link({other, Q1}, {other, Xplus});
    link({other, Q0}, {other, Xminus});
  }
  // Exciton transfer, to first order in the hole mixing.
  link({Q0, Xminus}, {Xminus, Q0});
  link({Q1, Xplus}, {Xplus, Q1});
  link({Q1, Xminus}, {Xplus, Q0});
  link({Xminus, Q1}, {Q0, Xplus});
  return p;
}

std::array<Manifold, 4> make_manifolds() {
  const Pattern& p = structural_couplings();
  std::array<int, kBasisSize> parent;
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < kBasisSize; ++i)
    for (int j = 0; j < kBasisSize; ++j)
      if (p[i][j]) parent[find(i)] = find(j);

  std::array<Manifold, 4> out;
  const auto seeds = computational_states();
  for (std::size_t m = 0; m < seeds.size(); ++m) {
    out[m].seed = seeds[m];
    std::size_t n = 0;
    for (int i = 0; i < kBasisSize; ++i) {
      if (find(i) != find(seeds[m].index())) continue;
      if (n == 4) throw std::logic_error("manifold larger than four states");
      out[m].members[n++] = TwoDotState::from_index(i);
    }
    if (n != 4) throw std::logic_error("manifold smaller than four states");
  }
  return out;
}

}  // namespace

const Pattern& structural_couplings() {
  static const Pattern pattern = make_pattern();
  return pattern;
}

const std::array<Manifold, 4>& manifolds() {
  static const std::array<Manifold, 4> all = make_manifolds();
  return all;
}

const Manifold& manifold_of(TwoDotState s) {
  for (const Manifold& m : manifolds())
    if (m.contains(s)) return m;
  throw std::logic_error("state belongs to no manifold: " + label(s));
}

Operator16 projector(std::span<const TwoDotState> states) {
  if (states.empty()) throw std::invalid_argument("projector requires a nonempty state set");
  Operator16 p = Operator16::Zero();
  for (TwoDotState s : states) p(s.index(), s.index()) = 1.0;
  return p;
}

Operator16 trion_projector(Dot d) {
  Operator16 p = Operator16::Zero();
  for (TwoDotState s : enumerate_basis())
    if (is_trion(s.on(d))) p(s.index(), s.index()) = 1.0;
  return p;
}

Operator16 dot_swap() {
  Operator16 s = Operator16::Zero();
  for (TwoDotState x : enumerate_basis()) s(TwoDotState{x.dot_b, x.dot_a}.index(), x.index()) = 1.0;
  return s;
}

}  // namespace qdgate
