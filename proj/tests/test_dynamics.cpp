#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qndsim/dynamics.hpp"

using namespace qndsim;
using namespace qndsim::dynamics;
using hilbert::FockSpace;
using hilbert::ProbeSpace;

namespace {

JointSpace space_with_cutoff(int cutoff, int probe = 2) { return {FockSpace(cutoff), ProbeSpace(probe)}; }

HermitianOperator sigma_z_op() { return HermitianOperator(hilbert::pauli_z()); }

}  // namespace

TEST(BuildEffective, ZeroCouplingIsZero) {
  const auto h = build_effective(space_with_cutoff(3), {0.0, sigma_z_op()});
  EXPECT_TRUE(h.matrix().isZero(0.0));
}

TEST(BuildEffective, UnitCouplingSigmaZ) {
  const auto h = build_effective(space_with_cutoff(1), {1.0, sigma_z_op()});
  Matrix expected = Matrix::Zero(4, 4);
  expected(2, 2) = 1.0;
  expected(3, 3) = -1.0;
  EXPECT_TRUE(h.matrix().isApprox(expected));
}

TEST(BuildEffective, CommutesExactlyWithPhotonNumber) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  for (int rep = 0; rep < 25; ++rep) {
    const int dp = 2 + rep % 3;
    const auto space = space_with_cutoff(1 + rep % 7, dp);
    const auto h = build_effective(space, {coupling(rng), HermitianOperator(oracle::random_hermitian(rng, dp))});
    EXPECT_EQ(commutator_norm(h, photon_number(space)), 0.0);
  }
}

TEST(BuildEffective, ProbeDimensionMismatchThrows) {
  EXPECT_THROW(build_effective(space_with_cutoff(2, 3), {1.0, sigma_z_op()}), DimensionError);
}

TEST(BuildGaugeAnalog, DecoupledLimitIsDiagonal) {
  const auto space = space_with_cutoff(4);
  const auto h = build_gauge_analog(space, {0.0, 1.0});
  const Matrix off = h.matrix() - Matrix(h.matrix().diagonal().asDiagonal());
  EXPECT_TRUE(off.isZero(0.0));
  EXPECT_EQ(commutator_norm(h, photon_number(space)), 0.0);
}

TEST(BuildGaugeAnalog, DoesNotCommuteWithPhotonNumber) {
  const auto space = space_with_cutoff(6);
  const auto h = build_gauge_analog(space, {1.0, 1.0});
  EXPECT_GT(commutator_norm(h, photon_number(space)), 0.0);
}

TEST(BuildGaugeAnalog, ConservesTotalExcitation) {
  for (double g : {0.1, 1.0, 2.5}) {
    for (int cutoff : {1, 3, 6}) {
      const auto space = space_with_cutoff(cutoff);
      const auto h = build_gauge_analog(space, {g, 0.7});
      EXPECT_LE(commutator_norm(h, total_excitation(space)), 1e-12);
      EXPECT_GT(commutator_norm(h, photon_number(space)), 0.0);
    }
  }
}

TEST(BuildGaugeAnalog, RequiresTwoLevelProbe) {
  EXPECT_THROW(build_gauge_analog(space_with_cutoff(2, 3), {1.0, 1.0}), DimensionError);
}

TEST(BuildGaugeAnalog, MatrixElementsFollowExchangeForm) {
  // |n, lower> couples to |n-1, upper> with amplitude g sqrt(n).
  const auto space = space_with_cutoff(3);
  const double g = 0.3;
  const auto h = build_gauge_analog(space, {g, 2.0});
  for (int n = 1; n <= 3; ++n) {
    const Complex element = h.matrix()(space.flat_index(n - 1, 0), space.flat_index(n, 1));
    EXPECT_NEAR(std::abs(element - g * std::sqrt(n)), 0.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(h.matrix()(space.flat_index(2, 0), space.flat_index(2, 0)).real(), 1.0);
  EXPECT_DOUBLE_EQ(h.matrix()(space.flat_index(2, 1), space.flat_index(2, 1)).real(), -1.0);
}

TEST(Propagate, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(1);
  const HermitianOperator h(oracle::random_hermitian(rng, 4));
  const StateVector psi(oracle::random_state(rng, 4));
  EXPECT_TRUE(propagate(h, 0.0, psi).amplitudes().isApprox(psi.amplitudes()));
}

TEST(Propagate, PhaseEvolutionFlipsRelativeSign) {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;
  Vector v(2);
  v << 1.0, 1.0;
  const auto out = propagate(HermitianOperator(h), std::numbers::pi, StateVector::normalized(v));
  // (1, -1)/sqrt(2) up to a global phase.
  const Complex ratio = out[1] / out[0];
  EXPECT_NEAR(std::abs(ratio - Complex(-1.0, 0.0)), 0.0, 1e-12);
}

TEST(Propagate, MatchesFourthOrderSeriesForSmallGenerator) {
  // With |H| t = 0.015 the 4th-order remainder is below 1e-11.
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix h = oracle::random_hermitian(rng, 4);
    h *= 0.05 / h.operatorNorm();
    const Vector psi = oracle::random_state(rng, 4);
    const auto got = propagate(HermitianOperator(h), 0.3, StateVector(psi));
    EXPECT_LT((got.amplitudes() - oracle::series_propagate(h, 0.3, psi, 4)).norm(), 1e-8);
  }
}

TEST(Propagate, MatchesLongSeriesForGenericGenerator) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix h = oracle::random_hermitian(rng, 4);
    const Vector psi = oracle::random_state(rng, 4);
    const auto got = propagate(HermitianOperator(h), 0.3, StateVector(psi));
    EXPECT_LT((got.amplitudes() - oracle::series_propagate(h, 0.3, psi, 30)).norm(), 1e-12);
  }
}

TEST(Propagate, DimensionMismatchThrows) {
  EXPECT_THROW(propagate(HermitianOperator(hilbert::pauli_z()), 1.0, StateVector::basis(3, 0)), DimensionError);
}

TEST(UnitaryTensor, ZeroHamiltonianIsKroneckerDelta) {
  const auto space = space_with_cutoff(2);
  const auto u = unitary_tensor(space, HermitianOperator(Matrix::Zero(6, 6)), 2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 2; ++l) {
          const double want = (i == k && j == l) ? 1.0 : 0.0;
          EXPECT_NEAR(std::abs(u(i, j, k, l) - want), 0.0, 1e-15);
        }
}

TEST(UnitaryTensor, EffectiveEvolutionIsDiagonalInSystemIndex) {
  std::mt19937_64 rng(8);
  const auto space = space_with_cutoff(4, 3);
  const auto h = build_effective(space, {0.8, HermitianOperator(oracle::random_hermitian(rng, 3))});
  const auto u = unitary_tensor(space, h, 1.7);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      if (i == k) continue;
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) EXPECT_LT(std::abs(u(i, j, k, l)), 1e-12);
    }
}

TEST(UnitaryTensor, GaugeAnalogUnitarityByContraction) {
  const auto space = space_with_cutoff(2);
  const auto u = unitary_tensor(space, build_gauge_analog(space, {1.0, 1.0}), 1.0);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 2; ++l)
      for (int kk = 0; kk < 3; ++kk)
        for (int ll = 0; ll < 2; ++ll) {
          Complex sum = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) sum += u(i, j, k, l) * std::conj(u(i, j, kk, ll));
          const double want = (k == kk && l == ll) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(sum - want));
        }
  EXPECT_LT(worst, 1e-10);
  EXPECT_LT(u.unitarity_defect(), 1e-10);
}

TEST(UnitaryTensor, RejectsNonUnitaryMatrix) {
  Matrix m = Matrix::Identity(4, 4);
  m(0, 0) = 1.1;
  EXPECT_THROW(JointUnitaryTensor(space_with_cutoff(1), m), NumericalError);
}

TEST(CommutatorNorm, KnownPairs) {
  EXPECT_EQ(commutator_norm(hilbert::pauli_z(), hilbert::pauli_z()), 0.0);
  EXPECT_NEAR(commutator_norm(hilbert::pauli_x(), hilbert::pauli_z()), 2.0, 1e-14);
  EXPECT_THROW(commutator_norm(hilbert::pauli_x(), Matrix::Identity(3, 3)), DimensionError);
}

// Property: norm preservation for random Hermitian H and t in [0, 100].
TEST(Properties, PropagatePreservesNorm) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> time(0.0, 100.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int dim = 2 + rep % 30;
    const HermitianOperator h(oracle::random_hermitian(rng, dim, 3.0));
    const auto out = propagate(h, time(rng), StateVector(oracle::random_state(rng, dim)));
    EXPECT_LE(std::abs(out.amplitudes().norm() - 1.0), 1e-10);
  }
}

TEST(Properties, UnitaryTensorContractionOnRandomHamiltonians) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> time(0.0, 100.0);
  for (int rep = 0; rep < 30; ++rep) {
    const auto space = space_with_cutoff(1 + rep % 6, 2 + rep % 3);
    const HermitianOperator h(oracle::random_hermitian(rng, space.dimension(), 2.0));
    EXPECT_LT(unitary_tensor(space, h, time(rng)).unitarity_defect(), 1e-10);
  }
}
