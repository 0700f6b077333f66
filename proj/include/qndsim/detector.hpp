#pragma once

// Analytic design model of the interferometric photodetector.
//
//   backaction   dn_ba  = C_ba  gamma^2 <n> N / (Delta^4 tau_p)
//   error        dn_err = C_err Delta / (gamma^2 sqrt(N))
//   phase/photon phi_1  = C_phi gamma^2 tau_p / Delta
//
// The response range runs from n_min = dn_err / eps_err (relative error
// target) up to n_max = pi / phi_1 (electron phase below pi). The relative
// backaction dn_ba / <n> does not depend on <n>, so the backaction target is
// a pass/fail constraint on the design parameters alone.

#include <optional>
#include <string>
#include <vector>

namespace qndsim::detector {

// Proportionality constants of the three scaling laws. Unity by default.
struct CalibrationConstants {
  double backaction = 1.0;
  double error = 1.0;
  double phase = 1.0;
};

struct DetectorDesign {
  double gamma = 1.0;
  double delta = 1.0;  // |detuning|
  double tau_p = 1.0;  // optical pulse duration
  long long electrons = 1;
  CalibrationConstants constants;

  // Throws ValidationError unless every field is strictly positive and finite.
  void validate() const;
};

struct DesignTargets {
  double eps_ba = 1e-2;
  double eps_err = 1e-2;
  double tau_p_min = 10.0;

  void validate() const;
};

struct ResponseRange {
  double n_min = 0.0;
  double n_max = 0.0;
  bool feasible = false;  // n_min < n_max
};

double backaction_model(const DetectorDesign& d, double n_mean);
double relative_backaction(const DetectorDesign& d);
double error_model(const DetectorDesign& d);
double single_photon_phase(const DetectorDesign& d);

ResponseRange response_range(const DetectorDesign& d, const DesignTargets& t);

// (n_max - n_min) / dn_err
double distinguishable_values(double n_min, double n_max, double delta_n_err);
// log2 of distinguishable_values, or 0 when at most one value can be resolved.
// Throws ValidationError for n_max <= n_min or delta_n_err <= 0.
double entropy_bits(double n_min, double n_max, double delta_n_err);

// dn_err below sqrt(<n>) everywhere in [n_min, n_max]; strict inequality.
bool sql_check(const DetectorDesign& d, double n_min, double n_max);

namespace constraint {
inline constexpr const char* kBackaction = "backaction";
inline constexpr const char* kResponseRange = "response_range";
inline constexpr const char* kPhaseShift = "phase_shift";
inline constexpr const char* kGammaBound = "gamma_bound";
inline constexpr const char* kDeltaBound = "delta_bound";
inline constexpr const char* kElectronsBound = "electrons_bound";
}  // namespace constraint

struct DesignReport {
  double n_min = 0.0;
  double n_max = 0.0;
  double delta_n_err = 0.0;
  double relative_backaction = 0.0;
  double distinguishable_values = 0.0;
  double entropy_bits = 0.0;
  bool feasible = false;
  bool below_standard_quantum_limit = false;
  std::vector<std::string> binding_constraints;
  // Set only when infeasible: the constraint with the largest violation at
  // the least-infeasible grid point.
  std::optional<std::string> most_violated;
};

DesignReport evaluate_design(const DetectorDesign& d, const DesignTargets& t);

struct LogRange {
  double lo = 1.0;
  double hi = 1.0;
  int points = 1;
};

struct DesignBounds {
  LogRange gamma;
  LogRange delta;
  LogRange electrons;
};

struct DesignOutcome {
  DetectorDesign design;
  DesignReport report;
};

// Two-stage log-grid search over (gamma, delta, N) at tau_p = t.tau_p_min,
// maximizing entropy_bits among feasible points. Entropy ties go to the
// lexicographically smallest (gamma, delta, N). When nothing is feasible the
// least-infeasible point is returned with report.feasible == false.
DesignOutcome optimize_design(const DesignTargets& t, const DesignBounds& bounds,
                              const CalibrationConstants& constants = {});

// Anchor values a calibrated design must reproduce at a reference point.
struct CalibrationAnchors {
  double relative_backaction = 1e-2;
  double delta_n_err = 1e2;
  double n_max = 1e6;
};

// Solves the three scaling laws for their constants so that `reference`
// (whose own constants are ignored) reproduces the anchors exactly.
CalibrationConstants calibrate(const DetectorDesign& reference, const CalibrationAnchors& anchors);

// Worked operating point: eps_ba = eps_err = 1e-2 for tau_p >= 10, reference
// design (gamma, Delta, N) = (1, 1, 1e4), anchors dn_ba/<n> = 1e-2,
// dn_err = 1e2, n_max = 1e6, and search bounds that contain the reference
// point as the unique optimum.
struct ReferenceFixture {
  DesignTargets targets;
  DetectorDesign reference;
  CalibrationAnchors anchors;
  DesignBounds bounds;
};

ReferenceFixture reference_fixture();

}  // namespace qndsim::detector
