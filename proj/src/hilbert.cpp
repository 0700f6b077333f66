#include "qndsim/hilbert.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qndsim::hilbert {

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 1) throw ValidationError("FockSpace: cutoff must be >= 1, got " + std::to_string(cutoff));
}

ProbeSpace::ProbeSpace(int dim) : dim_(dim) {
  if (dim < 2) throw ValidationError("ProbeSpace: dimension must be >= 2, got " + std::to_string(dim));
}

JointSpace::JointSpace(FockSpace system, ProbeSpace probe) : system_(system), probe_(probe) {}

int JointSpace::flat_index(int k, int l) const {
  if (k < 0 || k >= system_.dimension() || l < 0 || l >= probe_.dimension()) {
    throw std::out_of_range("JointSpace::flat_index: (" + std::to_string(k) + ", " + std::to_string(l) +
                            ") outside space");
  }
  return k * probe_.dimension() + l;
}

std::pair<int, int> JointSpace::split_index(int flat) const {
  if (flat < 0 || flat >= dimension()) {
    throw std::out_of_range("JointSpace::split_index: " + std::to_string(flat) + " outside space");
  }
  return {flat / probe_.dimension(), flat % probe_.dimension()};
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("StateVector: empty amplitude vector");
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tolerance::kAlgebraic) {
    throw NumericalError("StateVector: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

StateVector StateVector::basis(int dimension, int index) {
  if (dimension < 1 || index < 0 || index >= dimension) {
    throw DimensionError("StateVector::basis: index " + std::to_string(index) + " outside dimension " +
                         std::to_string(dimension));
  }
  Vector v = Vector::Zero(dimension);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("StateVector::normalized: zero or non-finite vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector tensor(const StateVector& system, const StateVector& probe) {
  Vector v = Eigen::kroneckerProduct(system.amplitudes(), probe.amplitudes()).eval();
  // Product of unit vectors; renormalize the rounding away.
  return StateVector::normalized(std::move(v));
}

HermitianOperator::HermitianOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DimensionError("HermitianOperator: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  const double defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (!std::isfinite(defect) || defect > tolerance::kAlgebraic * scale) {
    throw NumericalError("HermitianOperator: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

double HermitianOperator::expectation(const StateVector& state) const {
  if (state.dimension() != dimension()) throw DimensionError("HermitianOperator::expectation: dimension mismatch");
  return state.amplitudes().dot(matrix_ * state.amplitudes()).real();
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probabilities, std::vector<double> labels)
    : probabilities_(std::move(probabilities)), labels_(std::move(labels)) {
  if (probabilities_.empty()) throw DimensionError("ProbabilityDistribution: empty");
  if (labels_.size() != probabilities_.size()) {
    throw DimensionError("ProbabilityDistribution: label count does not match probability count");
  }
  double sum = 0.0;
  for (double& p : probabilities_) {
    if (!std::isfinite(p) || p < -tolerance::kAccumulated) {
      throw NumericalError("ProbabilityDistribution: invalid entry " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance::kAccumulated) {
    throw NumericalError("ProbabilityDistribution: total probability " + std::to_string(sum) + " is not 1");
  }
}

ProbabilityDistribution ProbabilityDistribution::over_indices(std::vector<double> probabilities) {
  std::vector<double> labels(probabilities.size());
  std::iota(labels.begin(), labels.end(), 0.0);
  return {std::move(probabilities), std::move(labels)};
}

double ProbabilityDistribution::mean() const {
  return std::inner_product(probabilities_.begin(), probabilities_.end(), labels_.begin(), 0.0);
}

Matrix identity(int dimension) { return Matrix::Identity(dimension, dimension); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0),
       Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_minus() { return sigma_plus().adjoint(); }

Matrix tensor_product(const JointSpace& space, const Matrix& system_op, const Matrix& probe_op) {
  const int ds = space.system().dimension();
  const int dp = space.probe().dimension();
  if (system_op.rows() != ds || system_op.cols() != ds) {
    throw DimensionError("tensor_product: system operator is not " + std::to_string(ds) + "x" + std::to_string(ds));
  }
  if (probe_op.rows() != dp || probe_op.cols() != dp) {
    throw DimensionError("tensor_product: probe operator is not " + std::to_string(dp) + "x" + std::to_string(dp));
  }
  return Eigen::kroneckerProduct(system_op, probe_op).eval();
}

HermitianOperator tensor_product(const JointSpace& space, const HermitianOperator& system_op,
                                 const HermitianOperator& probe_op) {
  return HermitianOperator(tensor_product(space, system_op.matrix(), probe_op.matrix()));
}

HermitianOperator number_operator(const FockSpace& space) {
  Matrix n = Matrix::Zero(space.dimension(), space.dimension());
  for (int k = 0; k < space.dimension(); ++k) n(k, k) = static_cast<double>(k);
  return HermitianOperator(std::move(n));
}

Matrix annihilation_operator(const FockSpace& space) {
  Matrix a = Matrix::Zero(space.dimension(), space.dimension());
  for (int n = 1; n < space.dimension(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ProbabilityDistribution marginal_distribution(const JointSpace& space, const StateVector& state, Subsystem which) {
  if (state.dimension() != space.dimension()) {
    throw DimensionError("marginal_distribution: state dimension does not match joint space");
  }
  const int ds = space.system().dimension();
  const int dp = space.probe().dimension();
  // Columns index the system, rows the probe, matching row-major flattening.
  const Eigen::Map<const Matrix> grid(state.amplitudes().data(), dp, ds);
  const Eigen::ArrayXXd weights = grid.cwiseAbs2().array();
  if (which == Subsystem::system) {
    std::vector<double> p(ds);
    for (int k = 0; k < ds; ++k) p[k] = weights.col(k).sum();
    return ProbabilityDistribution::over_indices(std::move(p));
  }
  std::vector<double> p(dp);
  for (int l = 0; l < dp; ++l) p[l] = weights.row(l).sum();
  return ProbabilityDistribution::over_indices(std::move(p));
}

}  // namespace qndsim::hilbert
