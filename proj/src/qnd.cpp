#include "qndsim/qnd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qndsim::qnd {

namespace {

ProbabilityDistribution initial_distribution(const StateVector& system) {
  std::vector<double> p(system.dimension());
  for (int k = 0; k < system.dimension(); ++k) p[k] = std::norm(system[k]);
  return ProbabilityDistribution::over_indices(std::move(p));
}

void check_inputs(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe) {
  if (system.dimension() != u.space().system().dimension()) {
    throw DimensionError("qnd: system state dimension does not match tensor");
  }
  if (probe.dimension() != u.space().probe().dimension()) {
    throw DimensionError("qnd: probe state dimension does not match tensor");
  }
}

}  // namespace

bool strong_condition(const HermitianOperator& hamiltonian, const HermitianOperator& observable) {
  return dynamics::commutator_norm(hamiltonian, observable) <= tolerance::kAlgebraic;
}

ProbabilityDistribution final_system_marginal(const JointUnitaryTensor& u, const StateVector& system,
                                              const StateVector& probe) {
  check_inputs(u, system, probe);
  const Vector joint = Eigen::kroneckerProduct(system.amplitudes(), probe.amplitudes()).eval();
  const Vector evolved = u.matrix() * joint;
  const int ds = u.space().system().dimension();
  const int dp = u.space().probe().dimension();
  std::vector<double> p(ds, 0.0);
  for (int i = 0; i < ds; ++i) p[i] = evolved.segment(i * dp, dp).squaredNorm();
  return ProbabilityDistribution::over_indices(std::move(p));
}

WeakConditionReport compare_distributions(const ProbabilityDistribution& initial, const ProbabilityDistribution& final,
                                          std::span<const double> candidate_epsilons) {
  if (initial.size() != final.size()) throw DimensionError("compare_distributions: size mismatch");
  WeakConditionReport report;
  report.per_index_ratios.resize(initial.size(), 0.0);
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const double sum = final[i] + initial[i];
    if (sum > 0.0) report.per_index_ratios[i] = 2.0 * std::abs(final[i] - initial[i]) / sum;
  }
  report.epsilon_ba = *std::max_element(report.per_index_ratios.begin(), report.per_index_ratios.end());
  for (double eps : candidate_epsilons) {
    if (!(eps > 0.0)) throw ValidationError("compare_distributions: candidate epsilon must be positive");
    report.holds_at[eps] = eps >= report.epsilon_ba;
  }
  return report;
}

double number_backaction(const ProbabilityDistribution& initial, const ProbabilityDistribution& final) {
  if (initial.size() != final.size()) throw DimensionError("number_backaction: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i) total += initial.labels()[i] * std::abs(final[i] - initial[i]);
  return total;
}

WeakConditionReport epsilon_ba(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe,
                               std::span<const double> candidate_epsilons) {
  return compare_distributions(initial_distribution(system), final_system_marginal(u, system, probe),
                               candidate_epsilons);
}

bool weak_condition(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("weak_condition: epsilon must be positive, got " + std::to_string(epsilon));
  return epsilon >= epsilon_ba(u, system, probe).epsilon_ba;
}

double backaction_metric(const JointUnitaryTensor& u, const StateVector& system, const StateVector& probe) {
  return number_backaction(initial_distribution(system), final_system_marginal(u, system, probe));
}

}  // namespace qndsim::qnd
