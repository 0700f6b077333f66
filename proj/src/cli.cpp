#include "qndsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qndsim/detector.hpp"
#include "qndsim/dynamics.hpp"
#include "qndsim/metrology.hpp"
#include "qndsim/qnd.hpp"

namespace qndsim::cli {

namespace {

using nlohmann::json;

// Thrown when a design has no feasible point; carries the report to emit.
struct Infeasible {
  std::string report;
  std::string diagnostic;
};

// JSON config source for CLI11. Keys are long option names without dashes.
// A key naming a subcommand holds that subcommand's options; any other key
// applies to the subcommand selected on the command line. Options given on
// the command line take precedence.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<std::string> active;
    for (const auto* sub : app_->get_subcommands()) active.push_back(sub->get_name());

    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        for (const auto& [inner, inner_value] : value.items()) items.push_back(item({key}, inner, inner_value));
      } else {
        items.push_back(item(active, key, value));
      }
    }
    return items;
  }

 private:
  static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name, const json& value) {
    CLI::ConfigItem out;
    out.parents = std::move(parents);
    out.name = name;
    auto scalar = [](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
      if (v.is_number()) return v.dump();
      throw CLI::ConfigError("unsupported config value " + v.dump());
    };
    if (value.is_array()) {
      for (const auto& v : value) out.inputs.push_back(scalar(v));
    } else {
      out.inputs.push_back(scalar(value));
    }
    return out;
  }

  const CLI::App* app_;
};

// Locale-independent, 17 significant digits.
std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

json json_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct CommonFlags {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* sub, CommonFlags& flags, const std::string& default_format) {
  flags.format = default_format;
  sub->add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  sub->add_option("--out", flags.out, "Write the report to this file instead of stdout");
  sub->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

struct StateFlags {
  int cutoff = 6;
  int fock = 1;
  std::vector<double> amplitudes;
};

void add_state(CLI::App* sub, StateFlags& flags) {
  sub->add_option("--cutoff", flags.cutoff, "Photon-number cutoff")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--fock", flags.fock, "Initial photon-number eigenstate")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--amplitudes", flags.amplitudes, "Real amplitudes of the initial field state (normalized on input)")
      ->expected(1, -1);
}

hilbert::StateVector field_state(const StateFlags& flags) {
  const int dim = flags.cutoff + 1;
  if (!flags.amplitudes.empty()) {
    if (static_cast<int>(flags.amplitudes.size()) > dim) {
      throw ValidationError("--amplitudes has more entries than cutoff + 1");
    }
    Vector v = Vector::Zero(dim);
    for (std::size_t i = 0; i < flags.amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = flags.amplitudes[i];
    return hilbert::StateVector::normalized(std::move(v));
  }
  if (flags.fock > flags.cutoff) throw ValidationError("--fock exceeds --cutoff");
  return hilbert::StateVector::basis(dim, flags.fock);
}

std::vector<double> distribution_values(const hilbert::ProbabilityDistribution& p) { return p.probabilities(); }

// ---------------------------------------------------------------- qnd-check

struct QndCheckFlags {
  CommonFlags common;
  StateFlags state;
  std::string hamiltonian = "effective";
  double g = 1.0;
  double delta = 1.0;
  double t = 1.0;
  std::string probe = "plus";
};

std::string cmd_qnd_check(const QndCheckFlags& f) {
  const hilbert::JointSpace space(hilbert::FockSpace(f.state.cutoff), hilbert::ProbeSpace(2));
  const auto h = f.hamiltonian == "effective"
                     ? dynamics::build_effective(space, {f.g, hilbert::HermitianOperator(hilbert::pauli_z())})
                     : dynamics::build_gauge_analog(space, {f.g, f.delta});
  const auto number = dynamics::photon_number(space);
  const auto a = field_state(f.state);
  Vector b = Vector::Zero(2);
  if (f.probe == "upper") b(0) = 1.0;
  else if (f.probe == "lower") b(1) = 1.0;
  else b.setConstant(1.0);
  const auto probe = hilbert::StateVector::normalized(std::move(b));

  const auto u = dynamics::unitary_tensor(space, h, f.t);
  const bool strong = qnd::strong_condition(h, number);
  const double comm = dynamics::commutator_norm(h, number);
  const auto report = qnd::epsilon_ba(u, a, probe);
  const double dn_ba = qnd::backaction_metric(u, a, probe);
  const auto final = qnd::final_system_marginal(u, a, probe);
  std::vector<double> initial(a.dimension());
  for (int k = 0; k < a.dimension(); ++k) initial[k] = std::norm(a[k]);

  if (f.common.format == "csv") {
    std::ostringstream os;
    os << "hamiltonian,g,delta,t,cutoff,strong_condition,commutator_norm,epsilon_ba,delta_n_ba\n"
       << f.hamiltonian << ',' << csv_number(f.g) << ',' << csv_number(f.delta) << ',' << csv_number(f.t) << ','
       << f.state.cutoff << ',' << (strong ? "true" : "false") << ',' << csv_number(comm) << ','
       << csv_number(report.epsilon_ba) << ',' << csv_number(dn_ba) << '\n';
    return os.str();
  }
  json j;
  j["command"] = "qnd-check";
  j["hamiltonian"] = f.hamiltonian;
  j["g"] = f.g;
  j["delta"] = f.delta;
  j["t"] = f.t;
  j["cutoff"] = f.state.cutoff;
  j["probe"] = f.probe;
  j["strong_condition"] = strong;
  j["commutator_norm"] = comm;
  j["epsilon_ba"] = report.epsilon_ba;
  j["delta_n_ba"] = dn_ba;
  j["unitarity_defect"] = u.unitarity_defect();
  j["initial_distribution"] = initial;
  j["final_distribution"] = distribution_values(final);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------- simulate, sweep

struct ProtocolFlags {
  CommonFlags common;
  StateFlags state;
  std::string model = "gauge-analog";
  std::string branch = "fast";
  double g = 0.1;
  double delta = 10.0;
  double tau_t = 1.0;
  double bias_phase = 0.0;
  long long electrons = 10000;
  int trials = 200;
  unsigned threads = 1;
};

void add_protocol(CLI::App* sub, ProtocolFlags& f, const std::string& default_format) {
  add_common(sub, f.common, default_format);
  add_state(sub, f.state);
  sub->add_option("--model", f.model, "Interaction model")
      ->check(CLI::IsMember({"effective", "gauge-analog"}))
      ->capture_default_str();
  sub->add_option("--branch", f.branch, "Simulation branch")->check(CLI::IsMember({"fast", "exact"}))->capture_default_str();
  sub->add_option("--g", f.g, "Coupling strength")->capture_default_str();
  sub->add_option("--delta", f.delta, "Detuning")->capture_default_str();
  sub->add_option("--tau-t", f.tau_t, "Interaction time per electron")->capture_default_str();
  sub->add_option("--bias-phase", f.bias_phase, "Static interferometer phase in [0, pi]")->capture_default_str();
  sub->add_option("--electrons,-N", f.electrons, "Electrons per pulse")->capture_default_str();
  sub->add_option("--trials", f.trials, "Independent pulses")->capture_default_str();
  sub->add_option("--threads", f.threads, "Worker threads (results do not depend on this)")->capture_default_str();
}

metrology::ProtocolConfig protocol_config(const ProtocolFlags& f) {
  metrology::ProtocolConfig cfg;
  cfg.model = f.model == "effective" ? metrology::Model::effective : metrology::Model::gauge_analog;
  cfg.branch = f.branch == "exact" ? metrology::Branch::exact : metrology::Branch::fast;
  cfg.g = f.g;
  cfg.detuning = f.delta;
  cfg.tau_t = f.tau_t;
  cfg.bias_phase = f.bias_phase;
  cfg.electrons = f.electrons;
  cfg.trials = f.trials;
  cfg.initial_state = field_state(f.state);
  cfg.seed = f.common.seed;
  cfg.threads = f.threads;
  cfg.validate();
  return cfg;
}

std::string cmd_simulate(const ProtocolFlags& f) {
  const auto cfg = protocol_config(f);
  const auto r = metrology::run_protocol(cfg);
  if (f.common.format == "csv") {
    std::ostringstream os;
    os << "model,branch,g,delta,tau_t,bias_phase,electrons,trials,seed,reference_photons,estimate_mean,"
          "delta_n_err,delta_n_ba,epsilon_ba\n"
       << f.model << ',' << f.branch << ',' << csv_number(cfg.g) << ',' << csv_number(cfg.detuning) << ','
       << csv_number(cfg.tau_t) << ',' << csv_number(cfg.bias_phase) << ',' << cfg.electrons << ',' << cfg.trials
       << ',' << cfg.seed << ',' << csv_number(r.reference_photons) << ',' << csv_number(r.estimate_mean) << ','
       << csv_number(r.estimate_rms_error) << ',' << csv_number(r.delta_n_ba) << ',' << csv_number(r.epsilon_ba)
       << '\n';
    return os.str();
  }
  json j;
  j["command"] = "simulate";
  j["model"] = f.model;
  j["branch"] = f.branch;
  j["g"] = cfg.g;
  j["delta"] = cfg.detuning;
  j["tau_t"] = cfg.tau_t;
  j["bias_phase"] = cfg.bias_phase;
  j["electrons"] = cfg.electrons;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["error_diverges"] = r.error_diverges;
  j["reference_photons"] = r.reference_photons;
  j["estimate_mean"] = json_number(r.estimate_mean);
  j["delta_n_err"] = json_number(r.estimate_rms_error);
  j["delta_n_ba"] = r.delta_n_ba;
  j["epsilon_ba"] = r.epsilon_ba;
  j["final_distribution"] = distribution_values(r.final_number_distribution);
  std::vector<long long> plus;
  std::vector<long long> minus;
  for (const auto& c : r.counts) {
    plus.push_back(c.plus);
    minus.push_back(c.minus);
  }
  j["j_plus"] = plus;
  j["j_minus"] = minus;
  return j.dump(2) + "\n";
}

struct SweepFlags {
  ProtocolFlags protocol;
  std::string param = "delta";
  std::vector<double> values;
};

std::string cmd_sweep(const SweepFlags& f) {
  if (f.values.empty()) throw ValidationError("sweep: --values must list at least one value");
  const auto cfg = protocol_config(f.protocol);
  const auto parameter = f.param == "N"   ? metrology::SweepParameter::electrons
                         : f.param == "g" ? metrology::SweepParameter::coupling
                                          : metrology::SweepParameter::detuning;
  const auto rows = metrology::parameter_sweep(cfg, parameter, f.values);
  if (f.protocol.common.format == "json") {
    json j;
    j["command"] = "sweep";
    j["param"] = f.param;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"value", r.value},
                           {"delta_n_err", json_number(r.delta_n_err)},
                           {"delta_n_ba", r.delta_n_ba},
                           {"epsilon_ba", r.epsilon_ba}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "param,value,delta_n_err,delta_n_ba,epsilon_ba\n";
  for (const auto& r : rows) {
    os << f.param << ',' << csv_number(r.value) << ',' << csv_number(r.delta_n_err) << ',' << csv_number(r.delta_n_ba)
       << ',' << csv_number(r.epsilon_ba) << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------ design

struct DesignFlags {
  CommonFlags common;
  std::string fixture = "reference";
  std::optional<double> eps_ba, eps_err, tau_p;
  std::optional<double> c_ba, c_err, c_phi;
  std::optional<double> anchor_ba, anchor_err, anchor_n_max;
  std::optional<double> ref_gamma, ref_delta;
  std::optional<long long> ref_electrons;
  std::vector<double> gamma_range, delta_range, electrons_range;
  std::optional<int> grid_points;
};

detector::LogRange log_range(const std::vector<double>& flag, detector::LogRange fallback,
                             const std::optional<int>& points) {
  if (!flag.empty()) {
    if (flag.size() != 2) throw ValidationError("range flags take exactly two values: lo hi");
    fallback.lo = flag[0];
    fallback.hi = flag[1];
  }
  if (points) fallback.points = *points;
  return fallback;
}

json design_json(const detector::DesignOutcome& o, const detector::DesignTargets& t) {
  const auto& d = o.design;
  const auto& r = o.report;
  json j;
  j["command"] = "design";
  j["feasible"] = r.feasible;
  j["targets"] = {{"eps_ba", t.eps_ba}, {"eps_err", t.eps_err}, {"tau_p_min", t.tau_p_min}};
  j["design"] = {{"gamma", d.gamma}, {"delta", d.delta}, {"tau_p", d.tau_p}, {"electrons", d.electrons}};
  j["constants"] = {{"c_ba", d.constants.backaction}, {"c_err", d.constants.error}, {"c_phi", d.constants.phase}};
  j["n_min"] = json_number(r.n_min);
  j["n_max"] = json_number(r.n_max);
  j["delta_n_err"] = json_number(r.delta_n_err);
  j["relative_backaction"] = json_number(r.relative_backaction);
  j["distinguishable_values"] = json_number(r.distinguishable_values);
  j["entropy_bits"] = json_number(r.entropy_bits);
  j["below_standard_quantum_limit"] = r.below_standard_quantum_limit;
  j["binding_constraints"] = r.binding_constraints;
  j["most_violated"] = r.most_violated ? json(*r.most_violated) : json(nullptr);
  return j;
}

std::string cmd_design(const DesignFlags& f) {
  const auto fixture = detector::reference_fixture();
  detector::DesignTargets targets = fixture.targets;
  if (f.eps_ba) targets.eps_ba = *f.eps_ba;
  if (f.eps_err) targets.eps_err = *f.eps_err;
  if (f.tau_p) targets.tau_p_min = *f.tau_p;
  targets.validate();

  detector::CalibrationConstants constants;
  if (f.fixture == "reference") {
    detector::DetectorDesign reference = fixture.reference;
    reference.tau_p = targets.tau_p_min;
    if (f.ref_gamma) reference.gamma = *f.ref_gamma;
    if (f.ref_delta) reference.delta = *f.ref_delta;
    if (f.ref_electrons) reference.electrons = *f.ref_electrons;
    detector::CalibrationAnchors anchors = fixture.anchors;
    if (f.anchor_ba) anchors.relative_backaction = *f.anchor_ba;
    if (f.anchor_err) anchors.delta_n_err = *f.anchor_err;
    if (f.anchor_n_max) anchors.n_max = *f.anchor_n_max;
    constants = detector::calibrate(reference, anchors);
  }
  if (f.c_ba) constants.backaction = *f.c_ba;
  if (f.c_err) constants.error = *f.c_err;
  if (f.c_phi) constants.phase = *f.c_phi;

  const detector::DesignBounds bounds{log_range(f.gamma_range, fixture.bounds.gamma, f.grid_points),
                                      log_range(f.delta_range, fixture.bounds.delta, f.grid_points),
                                      log_range(f.electrons_range, fixture.bounds.electrons, f.grid_points)};
  const auto outcome = detector::optimize_design(targets, bounds, constants);

  std::string text;
  if (f.common.format == "csv") {
    const auto& r = outcome.report;
    std::ostringstream os;
    os << "feasible,gamma,delta,tau_p,electrons,n_min,n_max,delta_n_err,relative_backaction,"
          "distinguishable_values,entropy_bits\n"
       << (r.feasible ? "true" : "false") << ',' << csv_number(outcome.design.gamma) << ','
       << csv_number(outcome.design.delta) << ',' << csv_number(outcome.design.tau_p) << ','
       << outcome.design.electrons << ',' << csv_number(r.n_min) << ',' << csv_number(r.n_max) << ','
       << csv_number(r.delta_n_err) << ',' << csv_number(r.relative_backaction) << ','
       << csv_number(r.distinguishable_values) << ',' << csv_number(r.entropy_bits) << '\n';
    text = os.str();
  } else {
    text = design_json(outcome, targets).dump(2) + "\n";
  }
  if (!outcome.report.feasible) {
    throw Infeasible{text, "design: no feasible point in bounds; most violated constraint: " +
                               outcome.report.most_violated.value_or("unknown")};
  }
  return text;
}

// ----------------------------------------------------------------- entropy

struct EntropyFlags {
  CommonFlags common;
  double n_min = 0.0;
  double n_max = 0.0;
  double err = 0.0;
};

std::string cmd_entropy(const EntropyFlags& f) {
  const double count = detector::distinguishable_values(f.n_min, f.n_max, f.err);
  const double bits = detector::entropy_bits(f.n_min, f.n_max, f.err);
  if (f.common.format == "csv") {
    return "n_min,n_max,delta_n_err,distinguishable_values,entropy_bits\n" + csv_number(f.n_min) + "," +
           csv_number(f.n_max) + "," + csv_number(f.err) + "," + csv_number(count) + "," + csv_number(bits) + "\n";
  }
  json j{{"command", "entropy"},
         {"n_min", f.n_min},
         {"n_max", f.n_max},
         {"delta_n_err", f.err},
         {"distinguishable_values", count},
         {"entropy_bits", bits}};
  return j.dump(2) + "\n";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::ios_base::failure("cannot open " + path);
  file << text;
  if (!file) throw std::ios_base::failure("failed writing " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-number QND measurement: error/backaction simulator and detector design tool", "qndsim"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");

  QndCheckFlags qf;
  auto* qnd_cmd = app.add_subcommand("qnd-check", "Strong and weak QND conditions for one interaction");
  qnd_cmd->fallthrough();
  add_common(qnd_cmd, qf.common, "json");
  add_state(qnd_cmd, qf.state);
  qnd_cmd->add_option("--hamiltonian", qf.hamiltonian, "Interaction Hamiltonian")
      ->check(CLI::IsMember({"effective", "gauge-analog"}))
      ->capture_default_str();
  qnd_cmd->add_option("--g", qf.g, "Coupling strength")->capture_default_str();
  qnd_cmd->add_option("--delta", qf.delta, "Detuning (gauge-analog only)")->capture_default_str();
  qnd_cmd->add_option("--t", qf.t, "Interaction time")->capture_default_str();
  qnd_cmd->add_option("--probe", qf.probe, "Initial probe state")
      ->check(CLI::IsMember({"plus", "upper", "lower"}))
      ->capture_default_str();

  ProtocolFlags sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the sequential-electron measurement protocol");
  sim_cmd->fallthrough();
  add_protocol(sim_cmd, sim, "json");

  SweepFlags sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Error and backaction across one swept parameter");
  sweep_cmd->fallthrough();
  add_protocol(sweep_cmd, sw.protocol, "csv");
  sweep_cmd->add_option("--param", sw.param, "Swept parameter")
      ->check(CLI::IsMember({"delta", "N", "g"}))
      ->capture_default_str();
  sweep_cmd->add_option("--values", sw.values, "Values of the swept parameter")->expected(1, -1);

  DesignFlags df;
  auto* design_cmd = app.add_subcommand("design", "Optimize the analytic detector design");
  design_cmd->fallthrough();
  add_common(design_cmd, df.common, "json");
  design_cmd->add_option("--fixture", df.fixture, "Calibration: 'reference' operating point or 'none' (unit constants)")
      ->check(CLI::IsMember({"reference", "none"}))
      ->capture_default_str();
  design_cmd->add_option("--eps-ba", df.eps_ba, "Relative backaction target");
  design_cmd->add_option("--eps-err", df.eps_err, "Relative error target");
  design_cmd->add_option("--tau-p", df.tau_p, "Minimum pulse duration");
  design_cmd->add_option("--c-ba", df.c_ba, "Backaction constant (overrides calibration)");
  design_cmd->add_option("--c-err", df.c_err, "Error constant (overrides calibration)");
  design_cmd->add_option("--c-phi", df.c_phi, "Phase constant (overrides calibration)");
  design_cmd->add_option("--ba-rel", df.anchor_ba, "Calibration anchor: relative backaction at the reference point");
  design_cmd->add_option("--err", df.anchor_err, "Calibration anchor: delta_n_err at the reference point");
  design_cmd->add_option("--n-max", df.anchor_n_max, "Calibration anchor: n_max at the reference point");
  design_cmd->add_option("--ref-gamma", df.ref_gamma, "Reference point gamma");
  design_cmd->add_option("--ref-delta", df.ref_delta, "Reference point detuning");
  design_cmd->add_option("--ref-electrons", df.ref_electrons, "Reference point electron count");
  design_cmd->add_option("--gamma-range", df.gamma_range, "Search range lo hi")->expected(2);
  design_cmd->add_option("--delta-range", df.delta_range, "Search range lo hi")->expected(2);
  design_cmd->add_option("--electrons-range", df.electrons_range, "Search range lo hi")->expected(2);
  design_cmd->add_option("--grid-points", df.grid_points, "Coarse grid points per axis");

  EntropyFlags ef;
  auto* entropy_cmd = app.add_subcommand("entropy", "Information entropy of a response range");
  entropy_cmd->fallthrough();
  add_common(entropy_cmd, ef.common, "json");
  entropy_cmd->add_option("--n-min", ef.n_min, "Lower end of the response range")->required();
  entropy_cmd->add_option("--n-max", ef.n_max, "Upper end of the response range")->required();
  entropy_cmd->add_option("--err", ef.err, "Measurement error delta_n_err")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationError;
  }

  std::string out_path;
  try {
    std::string text;
    if (qnd_cmd->parsed()) {
      out_path = qf.common.out;
      text = cmd_qnd_check(qf);
    } else if (sim_cmd->parsed()) {
      out_path = sim.common.out;
      text = cmd_simulate(sim);
    } else if (sweep_cmd->parsed()) {
      out_path = sw.protocol.common.out;
      text = cmd_sweep(sw);
    } else if (design_cmd->parsed()) {
      out_path = df.common.out;
      text = cmd_design(df);
    } else {
      out_path = ef.common.out;
      text = cmd_entropy(ef);
    }
    emit(text, out_path, out);
    return kSuccess;
  } catch (const Infeasible& e) {
    try {
      emit(e.report, out_path, out);
    } catch (const std::ios_base::failure& io) {
      err << "error: " << io.what() << '\n';
      return kIoFailure;
    }
    err << e.diagnostic << '\n';
    return kInfeasibleDesign;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}

}  // namespace qndsim::cli
