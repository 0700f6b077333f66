#include "qndsim/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "qndsim/qnd.hpp"

namespace qndsim::metrology {

namespace {

using hilbert::HermitianOperator;
using hilbert::JointSpace;

constexpr int kProbeDim = 4;

// Places an operator on system (x) level into the block of one wire.
Matrix embed_wire(const Matrix& op, int system_dim, int wire) {
  Matrix out = Matrix::Zero(system_dim * kProbeDim, system_dim * kProbeDim);
  for (int k = 0; k < system_dim; ++k) {
    for (int l = 0; l < 2; ++l) {
      for (int kk = 0; kk < system_dim; ++kk) {
        for (int ll = 0; ll < 2; ++ll) {
          out(k * kProbeDim + Interferometer::probe_index(wire, l),
              kk * kProbeDim + Interferometer::probe_index(wire, ll)) = op(k * 2 + l, kk * 2 + ll);
        }
      }
    }
  }
  return out;
}

HermitianOperator interferometer_hamiltonian(Model model, double g, double detuning, int cutoff) {
  const hilbert::FockSpace field(cutoff);
  if (model == Model::effective) {
    // Dispersive limit of the gauge-analog coupling: a number-dependent
    // energy -(g^2 / detuning) n on wire N, nothing on wire W.
    Matrix wire_n = Matrix::Zero(kProbeDim, kProbeDim);
    for (int l = 0; l < 2; ++l) wire_n(Interferometer::probe_index(Interferometer::kWireN, l),
                                       Interferometer::probe_index(Interferometer::kWireN, l)) = -1.0;
    const double coupling = detuning == 0.0 ? 0.0 : g * g / detuning;
    return dynamics::build_effective(JointSpace(field, hilbert::ProbeSpace(kProbeDim)),
                                     {coupling, HermitianOperator(wire_n)});
  }
  const JointSpace two_level(field, hilbert::ProbeSpace(2));
  // Both wires share the level splitting; only wire N sees the light.
  const auto coupled = dynamics::build_gauge_analog(two_level, {g, detuning});
  const auto decoupled = dynamics::build_gauge_analog(two_level, {0.0, detuning});
  const int ds = field.dimension();
  return HermitianOperator(embed_wire(coupled.matrix(), ds, Interferometer::kWireN) +
                           embed_wire(decoupled.matrix(), ds, Interferometer::kWireW));
}

std::mt19937_64 trial_engine(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

double photon_estimate(long long plus, long long electrons, const ProtocolConfig& cfg) {
  const double f_plus = static_cast<double>(plus) / static_cast<double>(electrons);
  const double total_phase = std::acos(std::clamp(2.0 * f_plus - 1.0, -1.0, 1.0));
  return (total_phase - cfg.bias_phase) * cfg.detuning / (cfg.g * cfg.g * cfg.tau_t);
}

ReadoutCounts fast_trial(const ProtocolConfig& cfg, const std::vector<double>& photon_weights, int trial) {
  auto engine = trial_engine(cfg.seed, trial);
  std::discrete_distribution<int> photons(photon_weights.begin(), photon_weights.end());
  const int n = photons(engine);
  const double phase = single_probe_phase(cfg.g, cfg.detuning, cfg.tau_t, n);
  const double p_plus = std::clamp(0.5 * (1.0 + std::cos(phase + cfg.bias_phase)), 0.0, 1.0);
  std::binomial_distribution<long long> ports(cfg.electrons, p_plus);
  const long long plus = ports(engine);
  return {plus, cfg.electrons - plus};
}

ReadoutCounts exact_trial(const ProtocolConfig& cfg, const Interferometer& device, int trial) {
  auto engine = trial_engine(cfg.seed, trial);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Matrix& kraus = device.readout_operators();
  const int ds = cfg.initial_state.dimension();
  Vector field = cfg.initial_state.amplitudes();
  Vector branches(kraus.rows());
  std::array<double, Interferometer::kOutcomes> weight{};
  ReadoutCounts counts;
  for (long long e = 0; e < cfg.electrons; ++e) {
    branches.noalias() = kraus * field;
    double total = 0.0;
    for (int o = 0; o < Interferometer::kOutcomes; ++o) {
      weight[o] = branches.segment(o * ds, ds).squaredNorm();
      total += weight[o];
    }
    if (std::abs(total - 1.0) > tolerance::kAccumulated) {
      throw NumericalError("exact branch: outcome probabilities sum to " + std::to_string(total));
    }
    double draw = uniform(engine) * total;
    int outcome = Interferometer::kOutcomes - 1;
    for (int o = 0; o < Interferometer::kOutcomes; ++o) {
      if (draw < weight[o]) {
        outcome = o;
        break;
      }
      draw -= weight[o];
    }
    while (weight[outcome] == 0.0) --outcome;
    field = branches.segment(outcome * ds, ds) / std::sqrt(weight[outcome]);
    if (Interferometer::is_plus(outcome)) ++counts.plus;
    else ++counts.minus;
  }
  return counts;
}

template <typename TrialFn>
std::vector<ReadoutCounts> run_trials(const ProtocolConfig& cfg, TrialFn trial_fn) {
  std::vector<ReadoutCounts> counts(cfg.trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    for (int t = 0; t < cfg.trials; ++t) counts[t] = trial_fn(t);
    return counts;
  }
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int t = static_cast<int>(w); t < cfg.trials; t += static_cast<int>(workers)) counts[t] = trial_fn(t);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return counts;
}

Eigen::MatrixXd matrix_power(Eigen::MatrixXd base, long long exponent) {
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = base * result;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace

void ProtocolConfig::validate() const {
  if (electrons < 1) throw ValidationError("protocol: electrons must be >= 1");
  if (trials < 1) throw ValidationError("protocol: trials must be >= 1");
  if (!std::isfinite(g) || !std::isfinite(detuning) || !std::isfinite(tau_t)) {
    throw ValidationError("protocol: g, detuning and tau_t must be finite");
  }
  if (!(tau_t > 0.0)) throw ValidationError("protocol: tau_t must be positive");
  if (detuning == 0.0) throw ValidationError("protocol: detuning must be nonzero");
  if (!(bias_phase >= 0.0 && bias_phase <= std::numbers::pi)) {
    throw ValidationError("protocol: bias_phase must lie in [0, pi]");
  }
  if (initial_state.dimension() < 2) throw ValidationError("protocol: field cutoff must be >= 1");
  if (threads < 1) throw ValidationError("protocol: threads must be >= 1");
}

double single_probe_phase(double g, double detuning, double tau_t, int n) {
  if (detuning == 0.0) throw ValidationError("single_probe_phase: dispersive phase needs nonzero detuning");
  if (n < 0) throw ValidationError("single_probe_phase: photon number must be >= 0");
  return g * g / detuning * tau_t * static_cast<double>(n);
}

double single_probe_phase_exact(double g, double detuning, double tau_t, int n) {
  if (n < 0) throw ValidationError("single_probe_phase_exact: photon number must be >= 0");
  const Interferometer device(Model::gauge_analog, g, detuning, tau_t, 0.0, std::max(n, 1));
  const int ds = device.space().system().dimension();
  const auto input = hilbert::tensor(StateVector::basis(ds, n), device.probe_input());
  const auto out = dynamics::propagate(device.hamiltonian(), tau_t, input);
  const auto& space = device.space();
  const Complex wire_n = out[space.flat_index(n, Interferometer::probe_index(Interferometer::kWireN, Interferometer::kLower))];
  const Complex wire_w = out[space.flat_index(n, Interferometer::probe_index(Interferometer::kWireW, Interferometer::kLower))];
  return std::arg(wire_n * std::conj(wire_w));
}

Interferometer::Interferometer(Model model, double g, double detuning, double tau_t, double bias_phase, int cutoff)
    : space_(hilbert::FockSpace(cutoff), hilbert::ProbeSpace(kProbeDim)),
      hamiltonian_(interferometer_hamiltonian(model, g, detuning, cutoff)),
      unitary_(dynamics::unitary_tensor(space_, hamiltonian_, tau_t)) {
  const int ds = space_.system().dimension();
  const StateVector input = probe_input();
  const Complex bias = std::polar(1.0, bias_phase);
  const double r = 1.0 / std::sqrt(2.0);
  // Readout states, ordered as documented in the header.
  std::array<Vector, kOutcomes> readout_states;
  for (int o = 0; o < kOutcomes; ++o) {
    const int level = o % 2 == 0 ? kUpper : kLower;
    const double sign = is_plus(o) ? 1.0 : -1.0;
    readout_states[o] = Vector::Zero(kProbeDim);
    readout_states[o](probe_index(kWireN, level)) = r;
    readout_states[o](probe_index(kWireW, level)) = sign * r * bias;
  }
  readout_ = Matrix::Zero(kOutcomes * ds, ds);
  const Matrix& u = unitary_.matrix();
  for (int k = 0; k < ds; ++k) {
    Vector column = Vector::Zero(space_.dimension());
    for (int q = 0; q < kProbeDim; ++q) column += u.col(space_.flat_index(k, q)) * input[q];
    for (int o = 0; o < kOutcomes; ++o) {
      for (int i = 0; i < ds; ++i) {
        readout_(o * ds + i, k) = readout_states[o].dot(column.segment(i * kProbeDim, kProbeDim));
      }
    }
  }
}

StateVector Interferometer::probe_input() const {
  Vector b = Vector::Zero(kProbeDim);
  b(probe_index(kWireN, kLower)) = 1.0 / std::sqrt(2.0);
  b(probe_index(kWireW, kLower)) = 1.0 / std::sqrt(2.0);
  return StateVector::normalized(std::move(b));
}

Eigen::MatrixXd Interferometer::population_transfer() const {
  const int ds = space_.system().dimension();
  const StateVector probe = probe_input();
  Eigen::MatrixXd transfer(ds, ds);
  for (int k = 0; k < ds; ++k) {
    const auto p = qnd::final_system_marginal(unitary_, StateVector::basis(ds, k), probe);
    for (int m = 0; m < ds; ++m) transfer(m, k) = p[m];
  }
  return transfer;
}

ProtocolResult run_protocol(const ProtocolConfig& cfg) {
  cfg.validate();
  const int ds = cfg.initial_state.dimension();
  std::vector<double> initial_p(ds);
  for (int k = 0; k < ds; ++k) initial_p[k] = std::norm(cfg.initial_state[k]);
  const auto initial = ProbabilityDistribution::over_indices(initial_p);

  const Interferometer device(cfg.model, cfg.g, cfg.detuning, cfg.tau_t, cfg.bias_phase, cfg.cutoff());

  // Both couplings conserve total excitation, so each readout branch shifts
  // the photon number by a fixed amount and coherences never feed the
  // populations: the ensemble number distribution after N electrons is T^N p.
  const Eigen::VectorXd p0 = Eigen::Map<const Eigen::VectorXd>(initial_p.data(), ds);
  const Eigen::VectorXd pn = matrix_power(device.population_transfer(), cfg.electrons) * p0;
  auto final = ProbabilityDistribution::over_indices(std::vector<double>(pn.data(), pn.data() + ds));

  ProtocolResult result;
  result.reference_photons = initial.mean();
  result.delta_n_ba = qnd::number_backaction(initial, final);
  result.epsilon_ba = qnd::compare_distributions(initial, final).epsilon_ba;
  result.final_number_distribution = std::move(final);

  if (cfg.branch == Branch::fast) {
    result.counts = run_trials(cfg, [&](int t) { return fast_trial(cfg, initial_p, t); });
  } else {
    result.counts = run_trials(cfg, [&](int t) { return exact_trial(cfg, device, t); });
  }

  if (cfg.g == 0.0) {
    result.error_diverges = true;
    result.estimate_mean = std::numeric_limits<double>::quiet_NaN();
    result.estimate_rms_error = std::numeric_limits<double>::infinity();
    return result;
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& c : result.counts) {
    const double estimate = photon_estimate(c.plus, cfg.electrons, cfg);
    sum += estimate;
    sum_sq += (estimate - result.reference_photons) * (estimate - result.reference_photons);
  }
  result.estimate_mean = sum / cfg.trials;
  result.estimate_rms_error = std::sqrt(sum_sq / cfg.trials);
  return result;
}

std::vector<SweepRow> parameter_sweep(const ProtocolConfig& base, SweepParameter parameter,
                                      std::span<const double> values) {
  if (values.empty()) throw ValidationError("parameter_sweep: no values to sweep");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    ProtocolConfig cfg = base;
    switch (parameter) {
      case SweepParameter::detuning: cfg.detuning = value; break;
      case SweepParameter::coupling: cfg.g = value; break;
      case SweepParameter::electrons:
        if (!(value >= 1.0) || value != std::floor(value)) {
          throw ValidationError("parameter_sweep: electron counts must be positive integers");
        }
        cfg.electrons = static_cast<long long>(value);
        break;
    }
    const auto r = run_protocol(cfg);
    rows.push_back({parameter, value, r.estimate_rms_error, r.delta_n_ba, r.epsilon_ba, r.error_diverges});
  }
  return rows;
}

std::vector<SweepRow> error_backaction_sweep(const ProtocolConfig& base, std::span<const double> delta_values) {
  return parameter_sweep(base, SweepParameter::detuning, delta_values);
}

}  // namespace qndsim::metrology
