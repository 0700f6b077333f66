#include "qndsim/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "qndsim/common.hpp"

namespace qndsim::detector {

namespace {

constexpr double kConstraintSlack = 1e-12;
constexpr double kBindingTolerance = 1e-9;
constexpr int kRefinePoints = 4;  // per side

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<double> log_grid(const LogRange& r) {
  if (!positive_finite(r.lo) || !positive_finite(r.hi) || r.hi < r.lo || r.points < 1) {
    throw ValidationError("optimize_design: bounds need 0 < lo <= hi and points >= 1");
  }
  if (r.points == 1 || r.lo == r.hi) return {r.lo};
  std::vector<double> out(r.points);
  const double ratio = r.hi / r.lo;
  for (int i = 0; i < r.points; ++i) {
    out[i] = r.lo * std::pow(ratio, static_cast<double>(i) / (r.points - 1));
  }
  out.front() = r.lo;
  out.back() = r.hi;
  return out;
}

std::vector<double> integer_grid(std::vector<double> values) {
  for (double& v : values) v = std::max(1.0, std::round(v));
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double grid_ratio(const LogRange& r) {
  return r.points > 1 && r.hi > r.lo ? std::pow(r.hi / r.lo, 1.0 / (r.points - 1)) : 1.0;
}

// Log grid centred exactly on `centre`, one coarse step to each side, clipped to the range.
std::vector<double> refine_around(double centre, const LogRange& r) {
  const double ratio = grid_ratio(r);
  if (ratio == 1.0) return {centre};
  std::vector<double> out;
  for (int k = -kRefinePoints; k <= kRefinePoints; ++k) {
    const double v = k == 0 ? centre : centre * std::pow(ratio, static_cast<double>(k) / kRefinePoints);
    if (v >= r.lo && v <= r.hi) out.push_back(v);
  }
  return out;
}

struct Violation {
  double worst = 0.0;
  const char* label = nullptr;
};

// log10 excess of each constraint, positive when violated.
Violation violation(const DetectorDesign& d, const DesignTargets& t) {
  const double ba = std::log10(relative_backaction(d) / t.eps_ba);
  const auto range = response_range(d, t);
  const double rr = std::log10(range.n_min / range.n_max);
  return ba >= rr ? Violation{ba, constraint::kBackaction} : Violation{rr, constraint::kResponseRange};
}

bool better(const DesignOutcome& a, const DesignOutcome& b) {
  const double tol = kConstraintSlack * std::max(1.0, std::abs(b.report.entropy_bits));
  if (a.report.entropy_bits > b.report.entropy_bits + tol) return true;
  if (a.report.entropy_bits < b.report.entropy_bits - tol) return false;
  return std::tie(a.design.gamma, a.design.delta, a.design.electrons) <
         std::tie(b.design.gamma, b.design.delta, b.design.electrons);
}

bool at_bound(double v, const LogRange& r) { return r.points > 1 && r.lo < r.hi && (v == r.lo || v == r.hi); }

}  // namespace

void DetectorDesign::validate() const {
  if (!positive_finite(gamma) || !positive_finite(delta) || !positive_finite(tau_p) || electrons < 1 ||
      !positive_finite(constants.backaction) || !positive_finite(constants.error) ||
      !positive_finite(constants.phase)) {
    throw ValidationError("DetectorDesign: all fields must be strictly positive and finite");
  }
}

void DesignTargets::validate() const {
  if (!(eps_ba > 0.0 && eps_ba < 1.0) || !(eps_err > 0.0 && eps_err <= 1.0) || !positive_finite(tau_p_min)) {
    throw ValidationError("DesignTargets: eps_ba in (0, 1), eps_err in (0, 1], tau_p_min > 0 required");
  }
}

double backaction_model(const DetectorDesign& d, double n_mean) {
  d.validate();
  if (!(n_mean >= 0.0)) throw ValidationError("backaction_model: mean photon number must be >= 0");
  return d.constants.backaction * d.gamma * d.gamma * n_mean * static_cast<double>(d.electrons) /
         (std::pow(d.delta, 4) * d.tau_p);
}

double relative_backaction(const DetectorDesign& d) { return backaction_model(d, 1.0); }

double error_model(const DetectorDesign& d) {
  d.validate();
  return d.constants.error * d.delta / (d.gamma * d.gamma * std::sqrt(static_cast<double>(d.electrons)));
}

double single_photon_phase(const DetectorDesign& d) {
  d.validate();
  return d.constants.phase * d.gamma * d.gamma * d.tau_p / d.delta;
}

ResponseRange response_range(const DetectorDesign& d, const DesignTargets& t) {
  t.validate();
  ResponseRange r;
  r.n_min = error_model(d) / t.eps_err;
  r.n_max = std::numbers::pi / single_photon_phase(d);
  r.feasible = r.n_min < r.n_max;
  return r;
}

double distinguishable_values(double n_min, double n_max, double delta_n_err) {
  if (!(n_max > n_min)) throw ValidationError("distinguishable_values: n_max must exceed n_min");
  if (!(delta_n_err > 0.0)) throw ValidationError("distinguishable_values: delta_n_err must be positive");
  return (n_max - n_min) / delta_n_err;
}

double entropy_bits(double n_min, double n_max, double delta_n_err) {
  const double count = distinguishable_values(n_min, n_max, delta_n_err);
  return count <= 1.0 ? 0.0 : std::log2(count);
}

bool sql_check(const DetectorDesign& d, double n_min, double n_max) {
  if (!(n_min >= 0.0) || n_max < n_min) throw ValidationError("sql_check: invalid range");
  // sqrt is increasing, so the lower end is the tightest point.
  return error_model(d) < std::sqrt(n_min);
}

DesignReport evaluate_design(const DetectorDesign& d, const DesignTargets& t) {
  const auto range = response_range(d, t);
  DesignReport report;
  report.n_min = range.n_min;
  report.n_max = range.n_max;
  report.delta_n_err = error_model(d);
  report.relative_backaction = relative_backaction(d);
  const bool backaction_ok = report.relative_backaction <= t.eps_ba * (1.0 + kConstraintSlack);
  report.feasible = backaction_ok && range.feasible;
  if (range.feasible) {
    report.distinguishable_values = distinguishable_values(range.n_min, range.n_max, report.delta_n_err);
    report.entropy_bits = entropy_bits(range.n_min, range.n_max, report.delta_n_err);
    report.below_standard_quantum_limit = sql_check(d, range.n_min, range.n_max);
  }
  if (!report.feasible) {
    report.entropy_bits = 0.0;
    report.most_violated = violation(d, t).label;
  }
  report.binding_constraints.push_back(constraint::kPhaseShift);
  if (std::abs(report.relative_backaction / t.eps_ba - 1.0) <= kBindingTolerance) {
    report.binding_constraints.push_back(constraint::kBackaction);
  }
  return report;
}

DesignOutcome optimize_design(const DesignTargets& t, const DesignBounds& bounds, const CalibrationConstants& constants) {
  t.validate();
  const auto gammas = log_grid(bounds.gamma);
  const auto deltas = log_grid(bounds.delta);
  const auto electrons = integer_grid(log_grid(bounds.electrons));

  std::optional<DesignOutcome> best;
  std::optional<std::pair<Violation, DesignOutcome>> least_bad;

  auto consider = [&](double gamma, double delta, double n) {
    DetectorDesign d{gamma, delta, t.tau_p_min, static_cast<long long>(n), constants};
    DesignOutcome candidate{d, evaluate_design(d, t)};
    if (candidate.report.feasible) {
      if (!best || better(candidate, *best)) best = std::move(candidate);
    } else if (!best) {
      const auto v = violation(d, t);
      if (!least_bad || v.worst < least_bad->first.worst) least_bad.emplace(v, std::move(candidate));
    }
  };

  for (double g : gammas)
    for (double dl : deltas)
      for (double n : electrons) consider(g, dl, n);

  if (!best) {
    if (!least_bad) throw ValidationError("optimize_design: empty search grid");
    DesignOutcome out = least_bad->second;
    out.report.most_violated = least_bad->first.label;
    return out;
  }

  const DetectorDesign incumbent = best->design;
  const auto fine_gammas = refine_around(incumbent.gamma, bounds.gamma);
  const auto fine_deltas = refine_around(incumbent.delta, bounds.delta);
  const auto fine_electrons = integer_grid(refine_around(static_cast<double>(incumbent.electrons), bounds.electrons));
  for (double g : fine_gammas)
    for (double dl : fine_deltas)
      for (double n : fine_electrons) consider(g, dl, n);

  DesignOutcome out = *best;
  if (at_bound(out.design.gamma, bounds.gamma)) out.report.binding_constraints.push_back(constraint::kGammaBound);
  if (at_bound(out.design.delta, bounds.delta)) out.report.binding_constraints.push_back(constraint::kDeltaBound);
  if (at_bound(static_cast<double>(out.design.electrons), bounds.electrons)) {
    out.report.binding_constraints.push_back(constraint::kElectronsBound);
  }
  return out;
}

CalibrationConstants calibrate(const DetectorDesign& reference, const CalibrationAnchors& anchors) {
  DetectorDesign unit = reference;
  unit.constants = {};
  unit.validate();
  if (!positive_finite(anchors.relative_backaction) || !positive_finite(anchors.delta_n_err) ||
      !positive_finite(anchors.n_max)) {
    throw ValidationError("calibrate: anchors must be strictly positive");
  }
  CalibrationConstants c;
  c.backaction = anchors.relative_backaction / relative_backaction(unit);
  c.error = anchors.delta_n_err / error_model(unit);
  c.phase = std::numbers::pi / (anchors.n_max * single_photon_phase(unit));
  return c;
}

ReferenceFixture reference_fixture() {
  ReferenceFixture f;
  f.targets = {1e-2, 1e-2, 10.0};
  f.reference = {1.0, 1.0, f.targets.tau_p_min, 10000, {}};
  f.anchors = {};
  f.reference.constants = calibrate(f.reference, f.anchors);
  // The backaction target caps N at 1e4 * Delta^4 / gamma^2, and the entropy
  // grows with N alone, so the corner (gamma_lo, Delta_hi) with N = 1e4 wins.
  f.bounds = {{1.0, 10.0, 13}, {0.1, 1.0, 13}, {1.0, 1e6, 25}};
  return f;
}

}  // namespace qndsim::detector
