#pragma once

// Interaction Hamiltonians for the photon/probe pair and exact unitary
// evolution under them. Units are dimensionless with hbar = 1.

#include "qndsim/hilbert.hpp"

namespace qndsim::dynamics {

using hilbert::HermitianOperator;
using hilbert::JointSpace;
using hilbert::StateVector;

// H = g * (n (x) probe_operator). Diagonal in the photon-number index, so it
// commutes with n (x) I exactly.
struct EffectiveCoupling {
  double g = 0.0;
  HermitianOperator probe_operator;
};

// Excitation-conserving coupling linear in the field operators:
//   H = (detuning / 2) I (x) sigma_z + g (a (x) sigma_plus + a^dag (x) sigma_minus)
// on a two-level probe. The detuning is the probe level splitting minus the
// field quantum, so H is written in the frame rotating with the field.
struct GaugeAnalogCoupling {
  double g = 0.0;
  double detuning = 0.0;
};

HermitianOperator build_effective(const JointSpace& space, const EffectiveCoupling& coupling);
HermitianOperator build_gauge_analog(const JointSpace& space, const GaugeAnalogCoupling& coupling);

// n (x) I
HermitianOperator photon_number(const JointSpace& space);
// n (x) I + I (x) (sigma_z + I) / 2, conserved by build_gauge_analog.
HermitianOperator total_excitation(const JointSpace& space);

// exp(-i H t) from the Hermitian eigendecomposition of H.
Matrix evolution_operator(const HermitianOperator& hamiltonian, double t);

StateVector propagate(const HermitianOperator& hamiltonian, double t, const StateVector& state);

// Spectral norm of AB - BA.
double commutator_norm(const Matrix& a, const Matrix& b);
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

// u(i, j, k, l) = <i, j| U |k, l>, with (i, k) system and (j, l) probe labels.
class JointUnitaryTensor {
 public:
  // Throws NumericalError when the matrix is not unitary to tolerance::kAccumulated.
  JointUnitaryTensor(JointSpace space, Matrix unitary);

  const JointSpace& space() const { return space_; }
  const Matrix& matrix() const { return unitary_; }

  Complex operator()(int i, int j, int k, int l) const {
    return unitary_(space_.flat_index(i, j), space_.flat_index(k, l));
  }

  // max over (k, l, k', l') of |sum_ij u_ij^kl conj(u_ij^k'l') - delta delta|
  double unitarity_defect() const;

 private:
  JointSpace space_;
  Matrix unitary_;
};

JointUnitaryTensor unitary_tensor(const JointSpace& space, const HermitianOperator& hamiltonian, double t);

}  // namespace qndsim::dynamics
