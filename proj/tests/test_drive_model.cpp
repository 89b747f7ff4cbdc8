#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qdgate/drive_model.hpp"
#include "test_support.hpp"

using namespace qdgate;
using enum DotState;

namespace {

double element(const Operator16& h, TwoDotState bra, TwoDotState ket) {
  return h(bra.index(), ket.index()).real();
}

PhysicalParams spectrum_params() {
  PhysicalParams p = testing::biexciton_params();
  return p;
}

struct Groups {
  std::vector<std::vector<double>> members;
};

// Split sorted energies at the largest gaps into `n` groups.
Groups split(const std::array<double, 16>& e, int n) {
  std::vector<int> cut(15);
  for (int i = 0; i < 15; ++i) cut[i] = i;
  std::sort(cut.begin(), cut.end(), [&](int a, int b) { return e[a + 1] - e[a] > e[b + 1] - e[b]; });
  cut.resize(n - 1);
  std::sort(cut.begin(), cut.end());
  Groups g;
  int start = 0;
  for (int c : cut) {
    g.members.emplace_back(e.begin() + start, e.begin() + c + 1);
    start = c + 1;
  }
  g.members.emplace_back(e.begin() + start, e.end());
  return g;
}

}  // namespace

TEST_CASE("pulse shapes") {
  const auto s = PulseSchedule::with_default_window(8.0, 3.55, 4.5, 2.55);
  CHECK(rabi_envelope(0.0, s) == 8.0);
  CHECK(rabi_envelope(3.55, s) == doctest::Approx(8.0 / std::exp(1.0)));
  CHECK(rabi_envelope(3.55, s) == doctest::Approx(2.943).epsilon(2e-4));
  CHECK(rabi_envelope(-1.7, s) == rabi_envelope(1.7, s));
  CHECK(detuning(0.0, s) == -2.25);
  CHECK(detuning(2.55, s) == doctest::Approx(-4.5 * (1.0 - 1.0 / (2.0 * std::exp(1.0)))));
  CHECK(detuning(2.55, s) == doctest::Approx(-3.672).epsilon(1e-4));
  CHECK(detuning(1e3, s) == -4.5);
}

TEST_CASE("schedule validation and windows") {
  const auto s = PulseSchedule::with_default_window(8.0, 3.55, 4.5, 2.55, 0.001);
  CHECK(s.t_start == doctest::Approx(-14.2));
  CHECK(s.t_end == doctest::Approx(14.2));
  CHECK(s.steps() == 28400);
  CHECK(s.time_at(s.steps()) == doctest::Approx(s.t_end));
  CHECK_NOTHROW(s.validate());
  auto bad = s;
  bad.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.tau_omega = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.t_start = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const auto scaled = s.time_scaled(2.0);
  CHECK(scaled.tau_omega == doctest::Approx(7.1));
  CHECK(scaled.tau_delta == doctest::Approx(5.1));
  CHECK(scaled.t_end == doctest::Approx(28.4));
  CHECK(scaled.dt == s.dt);

  PhysicalParams p;
  p.eps = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.eps = 0.1;
  p.eps_tilde = -1.2;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("light coupling") {
  const Operator16 a = light_coupling_rwa(8.0, 0.1, Dot::a);
  CHECK(element(a, {Q0, Q0}, {Xminus, Q0}) == doctest::Approx(0.4));
  CHECK(element(a, {Q1, Q0}, {Xplus, Q0}) == doctest::Approx(4.0));
  CHECK(element(a, {Q1, Xplus}, {Xplus, Xplus}) == doctest::Approx(4.0));
  CHECK(element(a, {Q0, Q0}, {Q0, Xminus}) == 0.0);
  CHECK((a - a.adjoint()).norm() == 0.0);
  CHECK(light_coupling_rwa(0.0, 0.1, Dot::b).norm() == 0.0);

  const Operator16 blocked = light_coupling_rwa(8.0, 0.0, Dot::b);
  for (auto s : enumerate_basis()) {
    for (auto t : enumerate_basis()) {
      const bool q0_xm = (s.dot_b == Q0 && t.dot_b == Xminus) || (s.dot_b == Xminus && t.dot_b == Q0);
      if (q0_xm) CHECK(element(blocked, s, t) == 0.0);
    }
  }
  const Operator16 swap = dot_swap();
  CHECK((swap * light_coupling_rwa(3.0, 0.2, Dot::a) * swap - light_coupling_rwa(3.0, 0.2, Dot::b)).norm() < 1e-15);
}

TEST_CASE("total Hamiltonian diagonal") {
  PhysicalParams p = testing::biexciton_params();
  p.offset_a = 0.3;
  p.offset_b = -0.2;
  const auto s = testing::biexciton_pulse();
  const double t = 1.3;
  const Operator16 h = build_total(t, p, s);
  const double det = detuning(t, s);
  CHECK(element(h, {Q0, Q0}, {Q0, Q0}) == 0.0);
  CHECK(element(h, {Q1, Q0}, {Q1, Q0}) == doctest::Approx(1.0));
  CHECK(element(h, {Q1, Q1}, {Q1, Q1}) == doctest::Approx(2.0));
  CHECK(element(h, {Q1, Xplus}, {Q1, Xplus}) == doctest::Approx(1.0 + det - 0.2));
  CHECK(element(h, {Xminus, Q0}, {Xminus, Q0}) == doctest::Approx(det + 0.3));
  CHECK(element(h, {Xplus, Xplus}, {Xplus, Xplus}) == doctest::Approx(2.0 * det + 0.1 + 2.0));
  CHECK(element(h, {Q1, Q0}, {Xplus, Q0}) == doctest::Approx(rabi_envelope(t, s) / 2.0));

  PhysicalParams free;
  free.delta = 0.7;
  const Operator16 d = build_static(free, 0.0, 0.0);
  CHECK((d - Operator16(d.diagonal().asDiagonal())).norm() == 0.0);
  CHECK(element(d, {Q1, Q1}, {Q1, Q1}) == doctest::Approx(1.4));
  CHECK(element(d, {Q0, Q1}, {Q0, Q1}) == doctest::Approx(0.7));
}

TEST_CASE("transfer block eigenvalues without light or mixing") {
  PhysicalParams p = testing::biexciton_params();
  p.eps = 0.0;
  p.eps_tilde = 0.0;
  const double det = -1.7;
  const Operator16 h = build_static(p, 0.0, det);
  const int i = TwoDotState{Q1, Xplus}.index(), j = TwoDotState{Xplus, Q1}.index();
  Eigen::Matrix2d block;
  block << h(i, i).real(), h(i, j).real(), h(j, i).real(), h(j, j).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  CHECK(es.eigenvalues()(0) == doctest::Approx(det + 1.0 - 0.5));
  CHECK(es.eigenvalues()(1) == doctest::Approx(det + 1.0 + 0.5));

  // Full spectrum: diagonal values plus the two transfer doublets.
  std::vector<double> expected;
  for (auto s : enumerate_basis()) {
    const bool paired = (s == TwoDotState{Q1, Xplus} || s == TwoDotState{Xplus, Q1} ||
                         s == TwoDotState{Q0, Xminus} || s == TwoDotState{Xminus, Q0});
    if (!paired) expected.push_back(h(s.index(), s.index()).real());
  }
  for (double sign : {-1.0, 1.0}) {
    expected.push_back(det + 1.0 + sign * 0.5);
    expected.push_back(det + sign * 0.5);
  }
  std::sort(expected.begin(), expected.end());
  Eigen::SelfAdjointEigenSolver<Operator16> full(h);
  for (int k = 0; k < 16; ++k) CHECK(full.eigenvalues()(k) == doctest::Approx(expected[k]));
}

TEST_CASE("hermiticity, block zeros and dot symmetry over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(-10.0, 10.0);
  const Operator16 swap = dot_swap();
  const auto s = testing::biexciton_pulse();
  for (int n = 0; n < 200; ++n) {
    PhysicalParams p = testing::random_params(rng);
    const double t = time(rng);
    const Operator16 h = build_total(t, p, s);
    CHECK((h - h.adjoint()).norm() == 0.0);
    const double scale = h.norm();
    for (auto a : enumerate_basis()) {
      for (auto b : enumerate_basis()) {
        if (manifold_of(a).seed == manifold_of(b).seed) continue;
        CHECK(std::abs(h(a.index(), b.index())) <= 1e-12 * scale);
      }
    }
    p.offset_b = p.offset_a;
    const Operator16 hs = build_total(t, p, s);
    CHECK((swap * hs * swap - hs).norm() <= 1e-14 * hs.norm());
  }
}

TEST_CASE("drive model matches direct assembly") {
  std::mt19937_64 rng(11);
  const auto s = testing::transfer_pulse();
  for (int n = 0; n < 20; ++n) {
    const PhysicalParams p = testing::random_params(rng);
    const DriveModel model(p);
    const double t = -3.0 + 0.37 * n;
    const RealOperator16 h = model.at(rabi_envelope(t, s), detuning(t, s));
    CHECK((h.cast<Complex>() - build_total(t, p, s)).norm() < 1e-13);
  }
}

TEST_CASE("spectrum groups at large detuning") {
  const PhysicalParams p = spectrum_params();
  const std::vector<double> grid{-10.0, 10.0};
  const auto points = spectrum_sweep(p, 1.0, grid, 2);
  REQUIRE(points.size() == 2);
  for (const auto& pt : points) {
    const Groups g = split(pt.energies, 3);
    REQUIRE(g.members.size() == 3);
    CHECK(g.members[0].size() == 4);
    CHECK(g.members[1].size() == 8);
    CHECK(g.members[2].size() == 4);
    double spread = 0.0;
    for (const auto& m : g.members) spread = std::max(spread, m.back() - m.front());
    // The computational group alone spans 2δ, and the nearest trion group
    // sits about |Δ| - δ - M away, so the margin here is bounded near 4.
    double min_gap = 1e300;
    for (int k = 0; k < 2; ++k) min_gap = std::min(min_gap, g.members[k + 1].front() - g.members[k].back());
    CHECK(min_gap > 3.0 * spread);
    CHECK(min_gap < 5.0 * spread);
    CHECK(spread >= 1.9);
  }
  for (const auto& pt : points) CHECK(std::is_sorted(pt.energies.begin(), pt.energies.end()));
  CHECK_THROWS_AS(spectrum_sweep(p, 1.0, std::span<const double>()), std::invalid_argument);
}

TEST_CASE("spectrum is continuous on a fine grid") {
  const PhysicalParams p = spectrum_params();
  std::vector<double> grid;
  const double step = 0.01;
  for (int i = 0; i <= 2000; ++i) grid.push_back(-10.0 + step * i);
  const auto points = spectrum_sweep(p, 1.0, grid, 2);
  double worst = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    for (int k = 0; k < 16; ++k) worst = std::max(worst, std::abs(points[i].energies[k] - points[i - 1].energies[k]));
  // Each level moves at most twice the detuning change (double trions).
  CHECK(worst <= 2.0 * step + 1e-12);
}

TEST_CASE("spectrum of a diagonal Hamiltonian") {
  PhysicalParams p;
  p.delta = 0.4;
  const double r = 0.0;
  const auto pt = spectrum_sweep(p, 0.0, std::span<const double>(&r, 1)).front();
  std::vector<double> diag;
  const Operator16 h = build_static(p, 0.0, 0.0);
  for (int i = 0; i < 16; ++i) diag.push_back(h(i, i).real());
  std::sort(diag.begin(), diag.end());
  for (int i = 0; i < 16; ++i) CHECK(pt.energies[i] == doctest::Approx(diag[i]));
  CHECK(spectral_radius(build_static(p, 0.0, 0.0).real()) == doctest::Approx(0.8));
}
