#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qndsim/dynamics.hpp"
#include "qndsim/hilbert.hpp"

using namespace qndsim;
using namespace qndsim::hilbert;

namespace {

JointSpace qubit_pair() { return {FockSpace(1), ProbeSpace(2)}; }

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST(Spaces, RejectInvalidSizes) {
  EXPECT_THROW(FockSpace(0), ValidationError);
  EXPECT_THROW(ProbeSpace(1), ValidationError);
  EXPECT_EQ(FockSpace(3).dimension(), 4);
}

TEST(Spaces, JointIndexIsRowMajorBijection) {
  const JointSpace space(FockSpace(2), ProbeSpace(3));
  EXPECT_EQ(space.dimension(), 9);
  std::vector<int> seen(space.dimension(), 0);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const int flat = space.flat_index(k, l);
      EXPECT_EQ(flat, k * 3 + l);
      EXPECT_EQ(space.split_index(flat), std::make_pair(k, l));
      ++seen[flat];
    }
  }
  for (int count : seen) EXPECT_EQ(count, 1);
  EXPECT_THROW(space.flat_index(3, 0), std::out_of_range);
  EXPECT_THROW(space.split_index(9), std::out_of_range);
}

TEST(StateVector, EnforcesNormalization) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, NumericalError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(Vector::Zero(3)), ValidationError);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  EXPECT_THROW(HermitianOperator{sigma_plus()}, NumericalError);
  EXPECT_NO_THROW(HermitianOperator{pauli_y()});
}

TEST(ProbabilityDistribution, ValidatesSumAndSign) {
  EXPECT_THROW(ProbabilityDistribution::over_indices({0.5, 0.4}), NumericalError);
  EXPECT_THROW(ProbabilityDistribution::over_indices({1.5, -0.5}), NumericalError);
  EXPECT_DOUBLE_EQ(ProbabilityDistribution::over_indices({0.25, 0.75}).mean(), 0.75);
}

TEST(TensorProduct, IdentityTimesIdentity) {
  EXPECT_TRUE(tensor_product(qubit_pair(), identity(2), identity(2)).isApprox(identity(4)));
}

TEST(TensorProduct, DiagonalCompositionFollowsRowMajorMap) {
  const Matrix out = tensor_product(qubit_pair(), diag({0, 1}), identity(2));
  EXPECT_TRUE(out.isApprox(diag({0, 0, 1, 1})));
}

TEST(TensorProduct, PauliXZMatchesElementwiseDefinition) {
  const Matrix out = tensor_product(qubit_pair(), pauli_x(), pauli_z());
  EXPECT_EQ((out - oracle::kron(pauli_x(), pauli_z())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TensorProduct, RandomOperatorsMatchLoopOracle) {
  std::mt19937_64 rng(11);
  const JointSpace space(FockSpace(3), ProbeSpace(3));
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix a = oracle::random_hermitian(rng, 4);
    const Matrix b = oracle::random_hermitian(rng, 3);
    EXPECT_LT((tensor_product(space, a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(TensorProduct, DimensionMismatchThrows) {
  EXPECT_THROW(tensor_product(qubit_pair(), identity(3), identity(2)), DimensionError);
  EXPECT_THROW(tensor_product(qubit_pair(), identity(2), identity(3)), DimensionError);
}

TEST(NumberOperator, IsDiagonalCount) {
  EXPECT_TRUE(number_operator(FockSpace(1)).matrix().isApprox(diag({0, 1})));
  EXPECT_TRUE(number_operator(FockSpace(3)).matrix().isApprox(diag({0, 1, 2, 3})));
  EXPECT_DOUBLE_EQ(number_operator(FockSpace(1)).expectation(StateVector::basis(2, 1)), 1.0);
}

TEST(Annihilation, MatrixElements) {
  Matrix expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_TRUE(annihilation_operator(FockSpace(1)).isApprox(expected));

  const FockSpace space(2);
  const Matrix a = annihilation_operator(space);
  EXPECT_TRUE((a.adjoint() * a).isApprox(diag({0, 1, 2})));

  const Vector lowered = a * StateVector::basis(3, 2).amplitudes();
  EXPECT_NEAR(std::abs(lowered(1) - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ(lowered(0), Complex(0.0));
  EXPECT_EQ(lowered(2), Complex(0.0));
}

TEST(Annihilation, NumberIdentityHoldsBelowTopLevel) {
  for (int cutoff = 1; cutoff <= 8; ++cutoff) {
    const FockSpace space(cutoff);
    const Matrix a = annihilation_operator(space);
    const Matrix diff = a.adjoint() * a - number_operator(space).matrix();
    EXPECT_LT(diff.topLeftCorner(cutoff + 1, cutoff + 1).cwiseAbs().maxCoeff(), 1e-12);
  }
  // a a^dag misses the top level, the usual truncation artefact.
  const FockSpace space(3);
  const Matrix a = annihilation_operator(space);
  const Matrix aad = a * a.adjoint();
  EXPECT_NEAR(aad(2, 2).real(), 3.0, 1e-12);
  EXPECT_NEAR(aad(3, 3).real(), 0.0, 1e-12);
}

TEST(Marginal, ProductStateGivesSystemWeights) {
  Vector a(2), b(2);
  a << 0.6, 0.8;
  b << Complex(0.0, 1.0), 0.0;
  const JointSpace space = qubit_pair();
  const auto p = marginal_distribution(space, tensor(StateVector(a), StateVector(b)), Subsystem::system);
  EXPECT_NEAR(p[0], 0.36, 1e-15);
  EXPECT_NEAR(p[1], 0.64, 1e-15);
}

TEST(Marginal, BellStateIsUniform) {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const JointSpace space = qubit_pair();
  for (auto which : {Subsystem::system, Subsystem::probe}) {
    const auto p = marginal_distribution(space, StateVector(v), which);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
  }
}

TEST(Marginal, RandomStateMatchesDoubleLoop) {
  std::mt19937_64 rng(5);
  const JointSpace space(FockSpace(2), ProbeSpace(2));  // 6 amplitudes
  for (int rep = 0; rep < 20; ++rep) {
    const Vector v = oracle::random_state(rng, 6);
    const StateVector state(v);
    const auto ps = marginal_distribution(space, state, Subsystem::system);
    const auto pp = marginal_distribution(space, state, Subsystem::probe);
    for (int k = 0; k < 3; ++k) {
      double sum = 0.0;
      for (int l = 0; l < 2; ++l) sum += std::norm(v(k * 2 + l));
      EXPECT_NEAR(ps[k], sum, 1e-15);
    }
    for (int l = 0; l < 2; ++l) {
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) sum += std::norm(v(k * 2 + l));
      EXPECT_NEAR(pp[l], sum, 1e-15);
    }
  }
}

TEST(Marginal, DimensionMismatchThrows) {
  EXPECT_THROW(marginal_distribution(qubit_pair(), StateVector::basis(6, 0), Subsystem::system), DimensionError);
}

// Property: U_sys (x) U_probe acting on a normalized product state keeps the norm.
TEST(Properties, ProductUnitaryPreservesNorm) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    const int cutoff = 1 + rep % 5;
    const int dp = 2 + rep % 3;
    const JointSpace space{FockSpace(cutoff), ProbeSpace(dp)};
    const Matrix u = tensor_product(space, oracle::random_unitary(rng, cutoff + 1), oracle::random_unitary(rng, dp));
    const auto psi = tensor(StateVector(oracle::random_state(rng, cutoff + 1)), StateVector(oracle::random_state(rng, dp)));
    EXPECT_NEAR((u * psi.amplitudes()).norm(), 1.0, 1e-10);
  }
}

TEST(Properties, MarginalsSumToOne) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const JointSpace space(FockSpace(1 + rep % 6), ProbeSpace(2 + rep % 3));
    const StateVector state(oracle::random_state(rng, space.dimension()));
    for (auto which : {Subsystem::system, Subsystem::probe}) {
      const auto p = marginal_distribution(space, state, which);
      double sum = 0.0;
      for (double x : p.probabilities()) sum += x;
      EXPECT_NEAR(sum, 1.0, 1e-10);
    }
  }
}
