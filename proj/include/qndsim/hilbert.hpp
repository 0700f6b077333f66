#pragma once

// Truncated state spaces for the photon field and the probe, plus the
// tensor-product bookkeeping that ties them together.
//
// Joint basis ordering is row-major with the system index outer:
// flat = k * probe_dim + l.

#include <utility>
#include <vector>

#include "qndsim/common.hpp"

namespace qndsim::hilbert {

// Photon-number space |0>, ..., |cutoff>.
class FockSpace {
 public:
  explicit FockSpace(int cutoff);

  int cutoff() const { return cutoff_; }
  int dimension() const { return cutoff_ + 1; }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int cutoff_;
};

class ProbeSpace {
 public:
  explicit ProbeSpace(int dim);

  int dimension() const { return dim_; }

  friend bool operator==(const ProbeSpace&, const ProbeSpace&) = default;

 private:
  int dim_;
};

class JointSpace {
 public:
  JointSpace(FockSpace system, ProbeSpace probe);

  const FockSpace& system() const { return system_; }
  const ProbeSpace& probe() const { return probe_; }
  int dimension() const { return system_.dimension() * probe_.dimension(); }

  int flat_index(int k, int l) const;
  std::pair<int, int> split_index(int flat) const;

  friend bool operator==(const JointSpace&, const JointSpace&) = default;

 private:
  FockSpace system_;
  ProbeSpace probe_;
};

// Pure state with unit norm (checked to tolerance::kAlgebraic on construction).
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  static StateVector basis(int dimension, int index);
  // Rescales to unit norm; throws ValidationError for the zero vector.
  static StateVector normalized(Vector amplitudes);

  const Vector& amplitudes() const { return amplitudes_; }
  int dimension() const { return static_cast<int>(amplitudes_.size()); }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  Vector amplitudes_;
};

StateVector tensor(const StateVector& system, const StateVector& probe);

class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix matrix);

  const Matrix& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

  double expectation(const StateVector& state) const;

 private:
  Matrix matrix_;
};

class ProbabilityDistribution {
 public:
  ProbabilityDistribution(std::vector<double> probabilities, std::vector<double> labels);

  // Labels 0, 1, ..., size-1.
  static ProbabilityDistribution over_indices(std::vector<double> probabilities);

  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<double>& labels() const { return labels_; }
  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }

  double mean() const;

 private:
  std::vector<double> probabilities_;
  std::vector<double> labels_;
};

enum class Subsystem { system, probe };

Matrix identity(int dimension);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
// Two-level probe convention: index 0 is the upper level, index 1 the lower,
// so pauli_z = diag(+1, -1) and sigma_plus = |0><1| raises the probe.
Matrix sigma_plus();
Matrix sigma_minus();

Matrix tensor_product(const JointSpace& space, const Matrix& system_op, const Matrix& probe_op);
HermitianOperator tensor_product(const JointSpace& space, const HermitianOperator& system_op,
                                 const HermitianOperator& probe_op);

HermitianOperator number_operator(const FockSpace& space);

// a[n-1, n] = sqrt(n).
Matrix annihilation_operator(const FockSpace& space);

ProbabilityDistribution marginal_distribution(const JointSpace& space, const StateVector& state,
                                              Subsystem which);

}  // namespace qndsim::hilbert
