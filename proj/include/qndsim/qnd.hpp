#pragma once

// Non-demolition conditions on a system/probe interaction.
//
// The strong condition is the vanishing commutator [H, Q] = 0. The weak
// condition bounds how far the measured observable's ensemble distribution
// moves: for every outcome i,
//   |p'_i - p_i| <= (eps / 2) (p'_i + p_i),
// where p_i = |a_i|^2 and p'_i = sum_j |sum_kl a_k b_l u_ij^kl|^2.

#include <map>
#include <span>
#include <vector>

#include "qndsim/dynamics.hpp"

namespace qndsim::qnd {

using dynamics::JointUnitaryTensor;
using hilbert::HermitianOperator;
using hilbert::ProbabilityDistribution;
using hilbert::StateVector;

struct WeakConditionReport {
  // Smallest eps for which the weak condition holds; always in [0, 2].
  double epsilon_ba = 0.0;
  // 2 |p'_i - p_i| / (p'_i + p_i), zero where both vanish.
  std::vector<double> per_index_ratios;
  std::map<double, bool> holds_at;
};

bool strong_condition(const HermitianOperator& hamiltonian, const HermitianOperator& observable);

ProbabilityDistribution final_system_marginal(const JointUnitaryTensor& u, const StateVector& system,
                                              const StateVector& probe);

// Distribution-level forms, shared by the tensor evaluators and by the
// multi-electron protocol in metrology.
WeakConditionReport compare_distributions(const ProbabilityDistribution& initial,
                                          const ProbabilityDistribution& final,
                                          std::span<const double> candidate_epsilons = {});
// sum_i n_i |p'_i - p_i|, with n_i the distribution labels.
double number_backaction(const ProbabilityDistribution& initial, const ProbabilityDistribution& final);

WeakConditionReport epsilon_ba(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe,
                               std::span<const double> candidate_epsilons = {});

// True iff epsilon >= epsilon_ba(u, system, probe). Throws ValidationError for epsilon <= 0.
bool weak_condition(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe,
                    double epsilon);

// delta n_ba: photon-number-weighted L1 change of the number distribution.
double backaction_metric(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe);

}  // namespace qndsim::qnd
