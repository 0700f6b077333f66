#include "qndsim/dynamics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qndsim::dynamics {

namespace {

void require_dimension(const HermitianOperator& op, int dim, const char* where) {
  if (op.dimension() != dim) {
    throw DimensionError(std::string(where) + ": operator dimension " + std::to_string(op.dimension()) +
                         " does not match space dimension " + std::to_string(dim));
  }
}

}  // namespace

HermitianOperator build_effective(const JointSpace& space, const EffectiveCoupling& coupling) {
  require_dimension(coupling.probe_operator, space.probe().dimension(), "build_effective");
  const auto n = hilbert::number_operator(space.system());
  return HermitianOperator(coupling.g * hilbert::tensor_product(space, n.matrix(), coupling.probe_operator.matrix()));
}

HermitianOperator build_gauge_analog(const JointSpace& space, const GaugeAnalogCoupling& coupling) {
  if (space.probe().dimension() != 2) {
    throw DimensionError("build_gauge_analog: probe must be two-level, got dimension " +
                         std::to_string(space.probe().dimension()));
  }
  const int ds = space.system().dimension();
  const Matrix a = hilbert::annihilation_operator(space.system());
  const Matrix free_part = hilbert::tensor_product(space, hilbert::identity(ds), hilbert::pauli_z());
  const Matrix exchange = hilbert::tensor_product(space, a, hilbert::sigma_plus()) +
                          hilbert::tensor_product(space, a.adjoint(), hilbert::sigma_minus());
  return HermitianOperator(0.5 * coupling.detuning * free_part + coupling.g * exchange);
}

HermitianOperator photon_number(const JointSpace& space) {
  return hilbert::tensor_product(space, hilbert::number_operator(space.system()),
                                 HermitianOperator(hilbert::identity(space.probe().dimension())));
}

HermitianOperator total_excitation(const JointSpace& space) {
  if (space.probe().dimension() != 2) throw DimensionError("total_excitation: probe must be two-level");
  const Matrix upper = 0.5 * (hilbert::pauli_z() + hilbert::identity(2));
  return HermitianOperator(photon_number(space).matrix() +
                           hilbert::tensor_product(space, hilbert::identity(space.system().dimension()), upper));
}

Matrix evolution_operator(const HermitianOperator& hamiltonian, double t) {
  if (t == 0.0) return hilbert::identity(hamiltonian.dimension());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("evolution_operator: eigendecomposition failed");
  const Eigen::VectorXd& energies = solver.eigenvalues();
  Vector phases(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) phases(i) = std::polar(1.0, -energies(i) * t);
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

StateVector propagate(const HermitianOperator& hamiltonian, double t, const StateVector& state) {
  if (state.dimension() != hamiltonian.dimension()) throw DimensionError("propagate: state/operator dimension mismatch");
  Vector out = evolution_operator(hamiltonian, t) * state.amplitudes();
  const double drift = std::abs(out.norm() - 1.0);
  if (drift > tolerance::kAccumulated) {
    throw NumericalError("propagate: norm drifted by " + std::to_string(drift));
  }
  return StateVector::normalized(std::move(out));
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("commutator_norm: operands must be square and of equal size");
  }
  const Matrix c = a * b - b * a;
  if (c.isZero(0.0)) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(c);
  return svd.singularValues()(0);
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator_norm(a.matrix(), b.matrix());
}

JointUnitaryTensor::JointUnitaryTensor(JointSpace space, Matrix unitary)
    : space_(std::move(space)), unitary_(std::move(unitary)) {
  if (unitary_.rows() != space_.dimension() || unitary_.cols() != space_.dimension()) {
    throw DimensionError("JointUnitaryTensor: matrix does not match joint space dimension");
  }
  const double defect = unitarity_defect();
  if (!(defect <= tolerance::kAccumulated)) {
    throw NumericalError("JointUnitaryTensor: unitarity defect " + std::to_string(defect));
  }
}

double JointUnitaryTensor::unitarity_defect() const {
  // Sum over outputs (i, j) for each pair of inputs is the Gram matrix U^dag U.
  const Matrix gram = unitary_.adjoint() * unitary_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

JointUnitaryTensor unitary_tensor(const JointSpace& space, const HermitianOperator& hamiltonian, double t) {
  require_dimension(hamiltonian, space.dimension(), "unitary_tensor");
  return {space, evolution_operator(hamiltonian, t)};
}

}  // namespace qndsim::dynamics
