#include "geophase/app/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "geophase/app/hamiltonian_file.hpp"
#include "geophase/gauge.hpp"
#include "geophase/phases.hpp"
#include "geophase/sampling.hpp"

namespace geophase::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string constituent_label(const ResolvedScenario& s, std::size_t k) {
  if (s.spin) return k == 0 ? "plus" : "minus";
  return "state " + std::to_string(k);
}

Ensemble make_ensemble(const ScenarioConfig& cfg, std::vector<Vector> basis,
                       std::vector<double> default_weights) {
  std::vector<double> w(basis.size(), 0.0);
  if (cfg.weights.empty()) {
    w = std::move(default_weights);
  } else {
    for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
      const std::size_t k = cfg.states.empty() ? i : cfg.states[i];
      if (k >= basis.size()) {
        throw ConfigError("config", 0, "states", "selector " + std::to_string(k) + " exceeds the dimension");
      }
      w[k] = cfg.weights[i];
    }
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return Ensemble(std::move(w), std::move(basis));
}

std::vector<AmplitudePath> paths_of(const BasisFrame& frame) {
  std::vector<AmplitudePath> out;
  for (const auto& v : frame.vectors) out.push_back({frame.grid, v});
  return out;
}

BasisFrame frame_of(const std::vector<AmplitudePath>& paths) {
  BasisFrame f{paths.front().grid, {}};
  for (const auto& p : paths) f.vectors.push_back(p.states);
  return f;
}

double phase_gap(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

ResolvedScenario resolve(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (cfg.model == Model::spin) {
    const spin::SpinParams& p = cfg.spin;
    const double horizon = cfg.horizon.value_or(p.period());
    const TimeGrid grid(0.0, horizon, effective_steps(cfg, horizon));
    const spin::SpinorPair w0 = spin::w_basis(p, 0.0);
    const auto [cp, cm] = spin::mixture_weights(p);
    return {spin::hamiltonian(p), grid, make_ensemble(cfg, {w0.plus, w0.minus}, {cp, cm}), p};
  }
  const SampledHamiltonian sampled = load_sampled_hamiltonian(cfg.hamiltonian_file);
  const double horizon = cfg.horizon.value_or(sampled.duration());
  if (horizon > sampled.duration() * (1.0 + 1e-12)) {
    throw ConfigError("config", 0, "horizon", "exceeds the sampled duration");
  }
  const EigenSystem es = hermitian_eigen(sampled.nodes().front());
  std::vector<Vector> basis;
  for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) basis.push_back(es.vectors.col(k));
  std::vector<double> pure(basis.size(), 0.0);
  pure[0] = 1.0;
  return {sampled.trajectory(), TimeGrid(0.0, horizon, effective_steps(cfg, horizon, sampled.steps())),
          make_ensemble(cfg, std::move(basis), std::move(pure)), std::nullopt};
}

Report run_scenario(const ScenarioConfig& cfg) {
  const ResolvedScenario s = resolve(cfg);
  const PropagatorPath u = propagate(s.hamiltonian, s.grid);
  const Ensemble& e = s.ensemble;

  Report r;
  r.command = "simulate";
  r.add("model", "", std::string(s.spin ? "spin" : "custom-sampled"));
  r.add("steps", "", static_cast<std::int64_t>(s.grid.steps()));
  r.add("horizon", "", s.grid.end());
  if (s.spin) {
    r.add("mu_b", "", s.spin->mu_b);
    r.add("omega", "", s.spin->omega);
    r.add("theta", "", s.spin->theta);
    r.add("big_theta", "", s.spin->big_theta);
    r.add("alpha", "", s.spin->alpha());
  }

  const std::vector<AmplitudePath> paths = constituent_paths(u, e);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string label = constituent_label(s, k);
    const PhaseReport pr = phase_report(paths[k], s.hamiltonian);
    r.add("weight", label, e.weights()[k]);
    r.add("total_phase", label, pr.total);
    r.add("overlap_magnitude", label, pr.overlap_magnitude);
    r.add("dynamical_phase", label, pr.dynamical);
    r.add("geometric_phase", label, pr.geometric);
    r.add("transport_residual", label, pr.transport_residual);
  }

  const DensityMatrix rho0 = density_from_ensemble(e);
  const MixedTotalPhase mixed = mixed_total_phase(rho0, u.final());
  const MixedDynamicalPhase dyn = mixed_dynamical_phase(e, u);
  const TransportResiduals tr = transport_conditions(e, u);
  const double strong = *std::max_element(tr.strong.begin(), tr.strong.end());
  r.add("gamma_t", "", mixed.gamma);
  r.add("visibility", "", mixed.visibility);
  r.add("mixed_dynamical_phase", "", dyn.value);
  r.add("mixed_dynamical_imaginary_residual", "", dyn.imaginary_residual);
  r.add("singh_phase", "", singh_phase(e.weights(), paths));
  r.add("weak_transport_residual", "", tr.weak);
  for (std::size_t k = 0; k < e.size(); ++k) r.add("strong_transport_residual", constituent_label(s, k), tr.strong[k]);
  r.add("strong_transport", "", std::string(strong <= kStrongTransportTolerance ? "satisfied" : "violated"));
  return r;
}

Report spin_report(const ScenarioConfig& cfg) {
  if (cfg.model != Model::spin) throw ConfigError("config", 0, "model", "spin-report needs model = spin");
  validate_config(cfg);
  const spin::SpinParams& p = cfg.spin;
  const double period = p.period();
  const TimeGrid grid(0.0, period, effective_steps(cfg, period));
  const HamiltonianTrajectory h = spin::hamiltonian(p);
  const PropagatorPath u = propagate(h, grid);
  const spin::SpinorPair w0 = spin::w_basis(p, 0.0);
  const double c = std::cos(p.theta - p.alpha());

  Report r;
  r.command = "spin-report";
  r.add("mu_b", "", p.mu_b);
  r.add("omega", "", p.omega);
  r.add("theta", "", p.theta);
  r.add("big_theta", "", p.big_theta);
  r.add("steps", "", static_cast<std::int64_t>(grid.steps()));
  r.add("alpha", "", p.alpha());
  r.add("period", "", period);
  r.add("beta_rate", "", p.beta_rate());
  r.add("alpha_identity_residual", "", 2.0 * p.mu_b * std::sin(p.alpha()) - p.omega * std::sin(p.theta - p.alpha()));

  const std::pair<spin::Branch, const char*> branches[] = {{spin::Branch::plus, "plus"},
                                                           {spin::Branch::minus, "minus"}};
  for (const auto& [b, label] : branches) {
    const Vector& start = b == spin::Branch::plus ? w0.plus : w0.minus;
    const AmplitudePath psi = amplitude_path(u, start);
    const spin::SpinorPair exact = spin::exact_amplitudes(p, period);
    const Vector& exact_final = b == spin::Branch::plus ? exact.plus : exact.minus;
    r.add("w_energy", label, spin::w_energy(p, b));
    r.add("w_connection", label, spin::w_connection(p, b));
    r.add("geometric_phase_exact", label, spin::geometric_phase(p, b));
    r.add("geometric_phase_numeric", label, geometric_phase_pure(psi));
    r.add("state_error", label, (psi.final() - exact_final).norm());
  }

  const AmplitudePath plus = amplitude_path(u, w0.plus);
  std::vector<std::array<double, 3>> bloch;
  for (std::size_t j = 0; j + 1 < plus.states.size(); ++j) bloch.push_back(spin::bloch_vector(plus.states[j]));
  r.add("cos_theta_minus_alpha", "", c);
  r.add("solid_angle_exact", "", spin::solid_angle(p));
  r.add("solid_angle_polygon", "", spin::spherical_polygon_area(bloch));
  r.add("interference_exact", "", spin::interference_value(p));
  r.add("interference_numeric", "", 0.5 * (plus.final() + plus.initial()).squaredNorm());

  const auto [cp, cm] = spin::mixture_weights(p);
  const Complex exact_trace = spin::mixed_trace(p);
  const Matrix rho = cp * w0.plus * w0.plus.adjoint() + cm * w0.minus * w0.minus.adjoint();
  const Complex numeric_trace = (u.final() * rho).trace();
  r.add("mixed_trace_real", "exact", exact_trace.real());
  r.add("mixed_trace_imag", "exact", exact_trace.imag());
  r.add("mixed_trace_real", "numeric", numeric_trace.real());
  r.add("mixed_trace_imag", "numeric", numeric_trace.imag());
  return r;
}

Report purify_demo(const ScenarioConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto dim = static_cast<Eigen::Index>(cfg.dim);
  const DensityMatrix rho = random_density_matrix(dim, rng);
  const Matrix w = random_unitary(dim, rng);
  const PurifiedState pure = purify(rho, dim, w);
  const DensityMatrix back = reduce(pure);

  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<double> alpha(static_cast<std::size_t>(dim));
  for (double& a : alpha) a = angle(rng);
  const DensityMatrix regauged = reduce(apply_system_phases(pure, alpha));

  Eigen::SelfAdjointEigenSolver<Matrix> es(back.matrix(), Eigen::EigenvaluesOnly);
  Report r;
  r.command = "purify-demo";
  r.add("seed", "", static_cast<std::int64_t>(cfg.seed));
  r.add("dim", "", static_cast<std::int64_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    r.add("eigenvalue", std::to_string(k), es.eigenvalues()[k]);
  }
  r.add("round_trip_error", "", (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
  r.add("reduced_trace_error", "", std::abs(back.matrix().trace() - 1.0));
  r.add("reduced_min_eigenvalue", "", es.eigenvalues().minCoeff());
  r.add("system_phase_error", "", (regauged.matrix() - back.matrix()).cwiseAbs().maxCoeff());
  return r;
}

double GaugeVerification::max_invariant_deviation() const {
  return std::max({total_phase_deviation, visibility_deviation, holonomy_deviation, singh_phase_deviation});
}

GaugeVerification verify_gauge(const ScenarioConfig& cfg) {
  const ResolvedScenario s = resolve(cfg);
  const PropagatorPath u = propagate(s.hamiltonian, s.grid);
  const Ensemble& e = s.ensemble;
  const std::vector<double>& w = e.weights();
  const std::size_t labels = e.size();

  const std::vector<AmplitudePath> paths = constituent_paths(u, e);
  const BasisFrame frame = frame_of(paths);
  const Complex trace0 = frame_trace(frame, w, s.hamiltonian);
  const double gamma0 = checked_arg(trace0, 1e-12, "verify_gauge");
  std::vector<Complex> hol0(labels);
  for (std::size_t k = 0; k < labels; ++k) hol0[k] = holonomy(frame, k);
  const double singh0 = singh_phase(w, paths);
  const double dyn0 = mixed_dynamical_phase(e, u).value;

  GaugeVerification v;
  v.trials = cfg.trials;
  v.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> stretch(1.25, 3.0);
  const double horizon = s.grid.duration();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    // A period longer than the horizon keeps theta(T) != theta(0).
    const double period = horizon * stretch(rng);
    const GaugeFunction g = GaugeFunction::random(labels, period, cfg.gauge_amplitude, rng);

    const BasisFrame gauged = apply_gauge(frame, g);
    const Complex trace = frame_trace(gauged, w, s.hamiltonian);
    v.total_phase_deviation = std::max(v.total_phase_deviation, phase_gap(std::arg(trace), gamma0));
    v.visibility_deviation = std::max(v.visibility_deviation, std::abs(std::abs(trace) - std::abs(trace0)));
    for (std::size_t k = 0; k < labels; ++k) {
      v.holonomy_deviation = std::max(v.holonomy_deviation, std::abs(holonomy(gauged, k) - hol0[k]));
    }
    v.singh_phase_deviation = std::max(v.singh_phase_deviation, phase_gap(singh_phase(w, paths_of(gauged)), singh0));

    const PropagatorPath u2 = transform_evolution(u, g, e);
    std::vector<double> theta_end(labels);
    GaugeTrial t{};
    for (std::size_t k = 0; k < labels; ++k) {
      theta_end[k] = g.value(k, s.grid.end());
      t.predicted_dynamical_shift += w[k] * (theta_end[k] - g.value(k, s.grid.start()));
    }
    t.observed_dynamical_shift = mixed_dynamical_phase(e, u2).value - dyn0;
    t.predicted_total_phase = reweighted_total_phase(e, u.final(), theta_end);
    t.observed_total_phase = mixed_total_phase(density_from_ensemble(e), u2.final()).gamma;
    v.dynamical_shift_mismatch =
        std::max(v.dynamical_shift_mismatch, std::abs(t.observed_dynamical_shift - t.predicted_dynamical_shift));
    v.total_phase_mismatch =
        std::max(v.total_phase_mismatch, phase_gap(t.observed_total_phase, t.predicted_total_phase));
    v.per_trial.push_back(t);
  }
  return v;
}

Report gauge_report(const GaugeVerification& v) {
  Report r;
  r.command = "verify-gauge";
  r.add("seed", "", static_cast<std::int64_t>(v.seed));
  r.add("trials", "", static_cast<std::int64_t>(v.trials));
  r.add("max_deviation", "total_phase", v.total_phase_deviation);
  r.add("max_deviation", "visibility", v.visibility_deviation);
  r.add("max_deviation", "holonomy", v.holonomy_deviation);
  r.add("max_deviation", "singh_phase", v.singh_phase_deviation);
  r.add("max_mismatch", "dynamical_shift", v.dynamical_shift_mismatch);
  r.add("max_mismatch", "naive_total_phase", v.total_phase_mismatch);
  for (std::size_t i = 0; i < v.per_trial.size(); ++i) {
    const std::string label = "trial " + std::to_string(i);
    const GaugeTrial& t = v.per_trial[i];
    r.add("predicted_dynamical_shift", label, t.predicted_dynamical_shift);
    r.add("observed_dynamical_shift", label, t.observed_dynamical_shift);
    r.add("predicted_total_phase", label, t.predicted_total_phase);
    r.add("observed_total_phase", label, t.observed_total_phase);
  }
  return r;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "index",           "mu_b",           "omega",      "theta",           "big_theta",
      "alpha",           "total_phase",    "dynamical_phase", "geometric_phase", "overlap_magnitude",
      "transport_residual", "solid_angle", "gamma_t",    "visibility",      "mixed_dynamical_phase",
      "singh_phase"};
  return cols;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"mu_b", "omega", "theta", "big_theta"};
  return axes;
}

namespace {

std::vector<double> sweep_row(const ScenarioConfig& cfg, std::size_t index) {
  const ResolvedScenario s = resolve(cfg);
  const spin::SpinParams& p = *s.spin;
  const PropagatorPath u = propagate(s.hamiltonian, s.grid);
  const AmplitudePath plus = amplitude_path(u, s.ensemble.states()[0]);

  std::vector<double> row = {static_cast<double>(index), p.mu_b, p.omega, p.theta, p.big_theta, p.alpha()};
  try {
    const PhaseReport pr = phase_report(plus, s.hamiltonian);
    row.insert(row.end(), {pr.total, pr.dynamical, pr.geometric, pr.overlap_magnitude, pr.transport_residual});
  } catch (const UndefinedPhaseError&) {
    row.insert(row.end(), {kNaN, dynamical_phase(plus, s.hamiltonian), kNaN, 0.0, transport_residual(plus)});
  }
  row.push_back(spin::solid_angle(p));

  const Ensemble& e = s.ensemble;
  const Complex tr = (u.final() * density_from_ensemble(e).matrix()).trace();
  row.push_back(std::abs(tr) < 1e-12 ? kNaN : wrap_angle(std::arg(tr)));
  row.push_back(std::abs(tr));
  row.push_back(mixed_dynamical_phase(e, u).value);
  try {
    row.push_back(singh_phase(e.weights(), constituent_paths(u, e)));
  } catch (const UndefinedPhaseError&) {
    row.push_back(kNaN);
  }
  return row;
}

}  // namespace

SweepTable sweep(const ScenarioConfig& cfg, const std::string& axis, std::span<const double> values) {
  if (cfg.model != Model::spin) throw ConfigError("config", 0, "model", "sweeps need model = spin");
  std::string key = axis;
  std::replace(key.begin(), key.end(), '-', '_');
  const auto& axes = sweep_axes();
  if (std::find(axes.begin(), axes.end(), key) == axes.end()) {
    throw ConfigError("command line", 0, "axis", "unknown sweep axis '" + axis + "'");
  }

  std::vector<ScenarioConfig> points;
  points.reserve(values.size());
  for (double x : values) {
    ScenarioConfig c = cfg;
    if (key == "mu_b") c.spin.mu_b = x;
    if (key == "omega") c.spin.omega = x;
    if (key == "theta") c.spin.theta = x;
    if (key == "big_theta") c.spin.big_theta = x;
    validate_config(c);
    points.push_back(std::move(c));
  }

  SweepTable table{key, sweep_columns(), std::vector<std::vector<double>>(points.size())};
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        table.rows[i] = sweep_row(points[i], i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, std::max<std::size_t>(points.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < workers; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return table;
}

}  // namespace geophase::app
