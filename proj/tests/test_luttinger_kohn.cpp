#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qdgate/luttinger_kohn.hpp"

using namespace qdgate;
using namespace qdgate::lk;

namespace {
const LuttingerParams kGaAs{6.8, 2.1, 2.9};
const TrapFrequencies kTrap{10.0, 11.0, 45.0};
}  // namespace

TEST_CASE("bulk Hamiltonian special cases") {
  CHECK(bulk_hamiltonian(kGaAs, {0, 0, 0}).norm() == 0.0);

  const Matrix4c kz_only = bulk_hamiltonian(kGaAs, {0, 0, 0.3});
  Matrix4c off = kz_only;
  off.diagonal().setZero();
  CHECK(off.norm() == 0.0);
  const double s = kFreeElectronKinetic;
  CHECK(kz_only(0, 0).real() == doctest::Approx(s * 0.09 * (6.8 - 4.2)));
  CHECK(kz_only(1, 1).real() == doctest::Approx(s * 0.09 * (6.8 + 4.2)));

  // kx = ky, kz = 0: c = -2i√3 s γ3 kx², so |c| = (√3ħ²/m0) γ3 kx².
  const double k = 0.2;
  const Matrix4c diag_k = bulk_hamiltonian(kGaAs, {k, k, 0});
  const Complex c = -diag_k(0, 2);
  CHECK(c.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(c) == doctest::Approx(2.0 * std::sqrt(3.0) * s * kGaAs.gamma3 * k * k));
}

TEST_CASE("bulk Hamiltonian is Hermitian and decouples without b") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kdist(-0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    const KVector k{kdist(rng), kdist(rng), kdist(rng)};
    const Matrix4c h = bulk_hamiltonian(kGaAs, k);
    CHECK((h - h.adjoint()).norm() < 1e-12 * (1.0 + h.norm()));

    // b vanishes with kz = 0: {+3/2, -1/2} and {+1/2, -3/2} no longer mix.
    const Matrix4c planar = bulk_hamiltonian(kGaAs, {k.kx, k.ky, 0.0});
    CHECK(std::abs(planar(0, 1)) == 0.0);
    CHECK(std::abs(planar(0, 3)) == 0.0);
    CHECK(std::abs(planar(2, 1)) == 0.0);
    CHECK(std::abs(planar(2, 3)) == 0.0);
  }
}

TEST_CASE("parabolic block for GaAs-like dot") {
  const Eigen::Matrix2d m = parabolic_block(kGaAs, kTrap);
  // ωT = 66 meV, ΔE_h = (66 - 135) 2.1/6.8, W = √3 (5/2)(-1)
  const double de = -69.0 * 2.1 / 6.8;
  const double w = -std::sqrt(3.0) * 2.5;
  CHECK(heavy_light_offset(kGaAs, kTrap) == doctest::Approx(-21.31).epsilon(1e-3));
  CHECK(subband_coupling(kGaAs, kTrap) == doctest::Approx(-4.33).epsilon(1e-3));
  CHECK(m(0, 0) == doctest::Approx((132.0 + de) / 4.0));
  CHECK(m(1, 1) == doctest::Approx((132.0 - de) / 4.0));
  CHECK(m(0, 1) == doctest::Approx(w / 4.0));

  CHECK(parabolic_block(kGaAs, {10, 10, 45})(0, 1) == 0.0);
  const Eigen::Matrix2d flat = parabolic_block({6.8, 0.0, 0.0}, kTrap);
  CHECK(flat(0, 1) == 0.0);
  CHECK(flat(0, 0) == doctest::Approx(33.0));
  CHECK(flat(1, 1) == doctest::Approx(33.0));
}

TEST_CASE("mixing parameter") {
  const auto est = mixing_epsilon(kGaAs, kTrap);
  CHECK(est.epsilon == doctest::Approx(0.1).epsilon(0.05));
  CHECK(std::abs(est.epsilon - 0.1017) <= 0.0005);
  CHECK(est.perturbative());
  // Closed form √3 γ1 (γ2+γ3)(ωx-ωy) / (4 γ2 (ωT - 3ωz)).
  CHECK(est.epsilon == doctest::Approx(std::sqrt(3.0) * 6.8 * 5.0 * (-1.0) / (4.0 * 2.1 * (66.0 - 135.0))));

  CHECK(mixing_epsilon(kGaAs, {10, 10, 45}).epsilon == 0.0);
  CHECK_THROWS_AS(mixing_epsilon(kGaAs, {10, 10, 10}), std::domain_error);

  const auto swapped = mixing_epsilon(kGaAs, {11, 10, 45});
  CHECK(swapped.epsilon == doctest::Approx(-est.epsilon));

  // Strongly anisotropic, weakly confined along z: the estimate is flagged.
  CHECK_FALSE(mixing_epsilon(kGaAs, {5, 25, 16}).perturbative());
}

TEST_CASE("exact rotation agrees with the first-order mixing estimate") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    const LuttingerParams p{4.0 + 6.0 * u(rng), 0.5 + 2.0 * u(rng), 0.5 + 3.0 * u(rng)};
    const TrapFrequencies w{5.0 + 20.0 * u(rng), 5.0 + 20.0 * u(rng), 10.0 + 50.0 * u(rng)};
    const double de = heavy_light_offset(p, w);
    if (de == 0.0) continue;
    const double ratio = subband_coupling(p, w) / (2.0 * de);
    if (std::abs(ratio) > 0.2) continue;
    ++tested;
    // Oracle: the rotation angle of the exact eigenvectors of the block.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(parabolic_block(p, w));
    const Eigen::Vector2d v = solver.eigenvectors().col(de > 0 ? 1 : 0);
    const double from_eigenvector = v(1) / v(0);
    const double eps_exact = exact_mixing_epsilon(p, w);
    CHECK(eps_exact == doctest::Approx(from_eigenvector).epsilon(1e-9));
    const double eps = mixing_epsilon(p, w).epsilon;
    CHECK(std::abs(eps_exact - eps) <= std::pow(std::abs(eps), 3) + 1e-12);
  }
}

TEST_CASE("heavy-light splitting") {
  const double gap = heavy_light_splitting(kGaAs, kTrap);
  CHECK(gap == doctest::Approx(11.0).epsilon(0.5 / 11.0));
  CHECK(gap == doctest::Approx(0.5 * std::hypot(69.0 * 2.1 / 6.8, std::sqrt(3.0) * 2.5)));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(parabolic_block(kGaAs, kTrap));
  CHECK(gap == doctest::Approx(solver.eigenvalues()(1) - solver.eigenvalues()(0)));

  CHECK(heavy_light_splitting(kGaAs, {10, 10, 45}) == doctest::Approx(std::abs(heavy_light_offset(kGaAs, {10, 10, 45})) / 2));
  CHECK(heavy_light_splitting(kGaAs, {20, 20, 20}) == 0.0);
}

TEST_CASE("mixed hole states") {
  const auto pure = hole_eigenstates(0.0);
  CHECK(pure[0].amplitudes.isApprox(Eigen::Vector4d(1, 0, 0, 0)));

  const auto mixed = hole_eigenstates(0.1);
  const auto& hp = mixed[0];
  CHECK(hp.kind == HoleKind::h_plus);
  CHECK(hp.amplitudes(2) == doctest::Approx(0.1));
  CHECK(hp.amplitudes(0) == doctest::Approx(std::sqrt(0.99)));
  // h+ only mixes {+3/2, -1/2}; h- only {-3/2, +1/2}.
  CHECK(hp.amplitudes(1) == 0.0);
  CHECK(hp.amplitudes(3) == 0.0);
  CHECK(mixed[1].amplitudes(0) == 0.0);
  CHECK(mixed[1].amplitudes(2) == 0.0);

  for (double eps : {-0.7, -0.1, 0.0, 0.3, 0.95}) {
    const auto states = hole_eigenstates(eps);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(states[i].amplitudes.norm() == doctest::Approx(1.0));
      for (std::size_t j = i + 1; j < 4; ++j)
        CHECK(std::abs(states[i].amplitudes.dot(states[j].amplitudes)) < 1e-15);
    }
  }
  CHECK_THROWS_AS(hole_eigenstates(1.0), std::invalid_argument);
  CHECK_THROWS_AS(hole_eigenstates(-1.2), std::invalid_argument);
}

TEST_CASE("hole states diagonalize the parabolic block to first order") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    const LuttingerParams p{4.0 + 6.0 * u(rng), 0.5 + 2.0 * u(rng), 0.5 + 3.0 * u(rng)};
    const TrapFrequencies w{5.0 + 20.0 * u(rng), 5.0 + 20.0 * u(rng), 10.0 + 50.0 * u(rng)};
    if (heavy_light_offset(p, w) == 0.0) continue;
    const double eps = mixing_epsilon(p, w).epsilon;
    if (std::abs(eps) > 0.3) continue;
    ++tested;
    const auto states = hole_eigenstates(eps);
    // Restrict h+ and h'- to the {+3/2, -1/2} block.
    const Eigen::Vector2d hp(states[0].amplitudes(0), states[0].amplitudes(2));
    const Eigen::Vector2d hm(states[3].amplitudes(0), states[3].amplitudes(2));
    const double residual = std::abs(hp.dot(parabolic_block(p, w) * hm));
    CHECK(residual <= std::abs(subband_coupling(p, w)) * eps * eps + 1e-12);
  }
}
