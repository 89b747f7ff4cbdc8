#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "qdgate/common.hpp"

namespace qdgate {

/// State of a single dot: resident electron spin down (|0>) or up (|1>), or
/// one of the two trions created from it.
enum class DotState : std::uint8_t { Q0 = 0, Q1 = 1, Xplus = 2, Xminus = 3 };

constexpr bool is_trion(DotState s) { return s == DotState::Xplus || s == DotState::Xminus; }

enum class Dot : std::uint8_t { a, b };

/// Product state |dot_a dot_b>. Index = 4 * code(dot_a) + code(dot_b).
struct TwoDotState {
  DotState dot_a = DotState::Q0;
  DotState dot_b = DotState::Q0;

  constexpr int index() const { return 4 * static_cast<int>(dot_a) + static_cast<int>(dot_b); }
  constexpr int trion_count() const { return int(is_trion(dot_a)) + int(is_trion(dot_b)); }
  constexpr bool is_computational() const { return trion_count() == 0; }
  constexpr DotState on(Dot d) const { return d == Dot::a ? dot_a : dot_b; }

  static TwoDotState from_index(int index);
  friend constexpr bool operator==(TwoDotState, TwoDotState) = default;
};

inline constexpr int kBasisSize = 16;

/// Human-readable label, e.g. "00", "1x+", "x-x+".
std::string label(TwoDotState s);
std::string label(DotState s);

/// All 16 states in index order.
std::array<TwoDotState, kBasisSize> enumerate_basis();

/// The four computational states in the order 00, 01, 10, 11.
std::array<TwoDotState, 4> computational_states();

/// Block of four states closed under the drive and transfer couplings,
/// seeded by one computational state.
struct Manifold {
  TwoDotState seed;
  std::array<TwoDotState, 4> members;

  bool contains(TwoDotState s) const;
};

/// Symbolic coupling pattern: true where some parameter choice makes the
/// total Hamiltonian nonzero off the diagonal.
const std::array<std::array<bool, kBasisSize>, kBasisSize>& structural_couplings();

/// Manifolds in seed order 00, 01, 10, 11. Computed once from the
/// structural coupling pattern.
const std::array<Manifold, 4>& manifolds();

const Manifold& manifold_of(TwoDotState s);

/// Diagonal 0/1 projector. Throws std::invalid_argument on an empty set.
Operator16 projector(std::span<const TwoDotState> states);

/// Projector onto every state with a trion on dot `d`.
Operator16 trion_projector(Dot d);

/// Dot exchange permutation |ab> -> |ba>.
Operator16 dot_swap();

}  // namespace qdgate
