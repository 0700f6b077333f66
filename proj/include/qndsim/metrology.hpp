#pragma once

// Monte-Carlo model of the interferometric photon-number measurement.
//
// A pulse holding the photon field is probed by N electrons in sequence.
// Each electron enters an equal superposition of the two wires N and W in
// its lower internal level. Light couples to the electron only in wire N;
// the acquired relative phase shifts the interference currents J+ and J-.
// Counting J+ over the pulse and inverting the fringe gives an estimate
// of the photon number.
//
// Two branches share this protocol:
//   fast  - binomial sampling of the ports from the dispersive phase
//           phi(n) = g^2 tau_t n / detuning,
//   exact - every electron interacts with the field through the full joint
//           unitary and is read out projectively; the field state is
//           updated after each electron.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qndsim/dynamics.hpp"
#include "qndsim/hilbert.hpp"

namespace qndsim::metrology {

using hilbert::ProbabilityDistribution;
using hilbert::StateVector;

enum class Model { effective, gauge_analog };
enum class Branch { fast, exact };

struct ProtocolConfig {
  Model model = Model::gauge_analog;
  Branch branch = Branch::fast;
  double g = 0.1;
  double detuning = 10.0;
  double tau_t = 1.0;  // interaction time per electron
  // Static phase of wire W at the output beam splitter, in [0, pi].
  // pi/2 places the fringe at its steepest point.
  double bias_phase = 0.0;
  long long electrons = 10000;
  int trials = 200;
  StateVector initial_state = StateVector::basis(7, 1);
  std::uint64_t seed = 0;
  unsigned threads = 1;

  int cutoff() const { return initial_state.dimension() - 1; }
  // Throws ValidationError.
  void validate() const;
};

struct ReadoutCounts {
  long long plus = 0;
  long long minus = 0;
};

struct ProtocolResult {
  // Set when the phase per photon vanishes (g = 0) and no estimate exists.
  bool error_diverges = false;
  double reference_photons = 0.0;  // <n> of the initial state
  double estimate_mean = 0.0;
  double estimate_rms_error = 0.0;  // delta n_err
  ProbabilityDistribution final_number_distribution = ProbabilityDistribution::over_indices({1.0});
  double delta_n_ba = 0.0;
  double epsilon_ba = 0.0;
  std::vector<ReadoutCounts> counts;
};

// Dispersive phase g^2 tau_t n / detuning. Throws ValidationError for detuning == 0.
double single_probe_phase(double g, double detuning, double tau_t, int n);
// Relative phase between the wires obtained by propagating
// |n> (x) (|N, lower> + |W, lower>) / sqrt(2) under the gauge-analog coupling.
double single_probe_phase_exact(double g, double detuning, double tau_t, int n);

// The per-electron interaction: system (x) [wire (x) level].
class Interferometer {
 public:
  static constexpr int kWireN = 0;
  static constexpr int kWireW = 1;
  static constexpr int kUpper = 0;
  static constexpr int kLower = 1;
  static constexpr int probe_index(int wire, int level) { return 2 * wire + level; }

  Interferometer(Model model, double g, double detuning, double tau_t, double bias_phase, int cutoff);

  const hilbert::JointSpace& space() const { return space_; }
  const hilbert::HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const dynamics::JointUnitaryTensor& per_electron() const { return unitary_; }
  StateVector probe_input() const;

  // Readout basis (port, level) with port +/- = (|N> +/- e^{i bias}|W>) / sqrt(2),
  // ordered (+, upper), (+, lower), (-, upper), (-, lower).
  static constexpr int kOutcomes = 4;
  static constexpr bool is_plus(int outcome) { return outcome < 2; }
  // Rows [o * dim, (o + 1) * dim) hold the field-space Kraus operator of outcome o.
  const Matrix& readout_operators() const { return readout_; }

  // T(m, k): probability that one electron takes the field from |k> to |m>,
  // averaged over readout outcomes.
  Eigen::MatrixXd population_transfer() const;

 private:
  hilbert::JointSpace space_;
  hilbert::HermitianOperator hamiltonian_;
  dynamics::JointUnitaryTensor unitary_;
  Matrix readout_;
};

ProtocolResult run_protocol(const ProtocolConfig& config);

enum class SweepParameter { detuning, electrons, coupling };

struct SweepRow {
  SweepParameter parameter = SweepParameter::detuning;
  double value = 0.0;
  double delta_n_err = 0.0;
  double delta_n_ba = 0.0;
  double epsilon_ba = 0.0;
  bool error_diverges = false;
};

// One independent run_protocol per value, all other settings fixed.
std::vector<SweepRow> parameter_sweep(const ProtocolConfig& base, SweepParameter parameter,
                                      std::span<const double> values);
std::vector<SweepRow> error_backaction_sweep(const ProtocolConfig& base, std::span<const double> delta_values);

}  // namespace qndsim::metrology
