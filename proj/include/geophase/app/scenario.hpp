#pragma once

// Scenario runners behind the command-line tool. Each returns plain data;
// serialization lives in report.hpp.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geophase/app/config.hpp"
#include "geophase/app/report.hpp"
#include "geophase/mixed.hpp"

namespace geophase::app {

/// A configuration turned into a Hamiltonian, a grid and a full-basis
/// ensemble (members with zero weight included).
struct ResolvedScenario {
  HamiltonianTrajectory hamiltonian;
  TimeGrid grid;
  Ensemble ensemble;
  std::optional<spin::SpinParams> spin;
};

ResolvedScenario resolve(const ScenarioConfig& cfg);

/// Strong transport counts as satisfied below this residual.
inline constexpr double kStrongTransportTolerance = 1e-6;

/// Propagates, then reports per-constituent pure phases, the mixed total
/// phase and visibility, the mixed dynamical phase, the transport residuals
/// and the Singh phase. Throws UndefinedPhaseError on zero visibility.
Report run_scenario(const ScenarioConfig& cfg);

/// Closed-form spin quantities next to their numerical counterparts over one
/// period.
Report spin_report(const ScenarioConfig& cfg);

/// Random density matrix of dimension cfg.dim, purified with a random
/// ancilla rotation, reduced again, and regauged with random constant phases.
Report purify_demo(const ScenarioConfig& cfg);

struct GaugeTrial {
  double predicted_dynamical_shift;
  double observed_dynamical_shift;
  double predicted_total_phase;
  double observed_total_phase;
};

struct GaugeVerification {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Largest change of the invariant quantities over all trials.
  double total_phase_deviation = 0.0;
  double visibility_deviation = 0.0;
  double holonomy_deviation = 0.0;
  double singh_phase_deviation = 0.0;
  // Largest predicted-vs-observed mismatch of the non-invariant quantities.
  double dynamical_shift_mismatch = 0.0;
  double total_phase_mismatch = 0.0;
  std::vector<GaugeTrial> per_trial;

  double max_invariant_deviation() const;
};

/// cfg.trials random smooth gauges drawn from a generator seeded with
/// cfg.seed; deterministic.
GaugeVerification verify_gauge(const ScenarioConfig& cfg);
Report gauge_report(const GaugeVerification& v);

/// Fixed column order of sweep tables.
const std::vector<std::string>& sweep_columns();

/// Spin parameter names accepted as sweep axes.
const std::vector<std::string>& sweep_axes();

/// One row per value, in input order, evaluated on cfg.workers threads.
/// Throws ConfigError for an unknown axis or an invalid value.
SweepTable sweep(const ScenarioConfig& cfg, const std::string& axis, std::span<const double> values);

}  // namespace geophase::app
