#include "geophase/phases.hpp"

#include <algorithm>

#include <cmath>
#include <string>

#include "geophase/errors.hpp"
#include "geophase/sampling.hpp"

namespace geophase {

namespace {

void require_consistent(const AmplitudePath& psi, const char* what) {
  if (psi.states.size() != psi.grid.size()) {
    throw DimensionError(std::string(what) + ": state count does not match the grid");
  }
}

}  // namespace

TotalPhase total_phase(const AmplitudePath& psi) {
  require_consistent(psi, "total_phase");
  const Complex overlap = inner(psi.initial(), psi.final());
  // Normalized so that roundoff drift in long paths cannot push it above 1.
  const double norms = psi.initial().norm() * psi.final().norm();
  return {checked_arg(overlap, 1e-12, "total_phase"), std::min(1.0, std::abs(overlap) / norms)};
}

double dynamical_phase(const AmplitudePath& psi, const HamiltonianTrajectory& h) {
  require_consistent(psi, "dynamical_phase");
  if (psi.initial().size() != h.dim()) {
    throw DimensionError("dynamical_phase: Hamiltonian and state dimensions differ");
  }
  std::vector<double> energy(psi.states.size());
  for (std::size_t j = 0; j < energy.size(); ++j) {
    const Vector& s = psi.states[j];
    energy[j] = inner(s, h(psi.grid.node(j)) * s).real();
  }
  return -trapezoid(energy, psi.grid.dt());
}

double kinematic_dynamical_phase(const AmplitudePath& psi) {
  require_consistent(psi, "kinematic_dynamical_phase");
  return -trapezoid(connection_samples(psi.states, psi.grid.dt()), psi.grid.dt());
}

double geometric_phase_pure(const AmplitudePath& psi) {
  require_consistent(psi, "geometric_phase_pure");
  const Complex overlap = inner(psi.initial(), psi.final());
  const double total = checked_arg(overlap, 1e-12, "geometric_phase_pure");
  return wrap_angle(total + accumulated_connection(psi.states).back());
}

AmplitudePath parallel_transport_amplitude(const AmplitudePath& psi) {
  require_consistent(psi, "parallel_transport_amplitude");
  const auto a = accumulated_connection(psi.states);
  AmplitudePath out{psi.grid, {}};
  out.states.reserve(psi.states.size());
  for (std::size_t j = 0; j < psi.states.size(); ++j) {
    out.states.push_back(std::polar(1.0, a[j]) * psi.states[j]);
  }
  return out;
}

double transport_residual(const AmplitudePath& psi) {
  require_consistent(psi, "transport_residual");
  const auto d = time_derivative(psi.states, psi.grid.dt());
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < psi.states.size(); ++j) {
    worst = std::max(worst, std::abs(inner(psi.states[j], d[j])));
  }
  return worst;
}

PhaseReport phase_report(const AmplitudePath& psi, const HamiltonianTrajectory& h) {
  const TotalPhase tp = total_phase(psi);
  const double dyn = dynamical_phase(psi, h);
  return {tp.angle, dyn, wrap_angle(tp.angle - dyn), tp.magnitude, transport_residual(psi)};
}

AdiabaticPhase adiabatic_phase(const HamiltonianTrajectory& h, const TimeGrid& grid,
                               std::size_t level) {
  if (level >= static_cast<std::size_t>(h.dim())) {
    throw DimensionError("adiabatic_phase: level index out of range");
  }
  constexpr double kMinGap = 1e-6;
  const auto k = static_cast<Eigen::Index>(level);
  std::vector<Vector> frame;
  std::vector<double> energy;
  frame.reserve(grid.size());
  energy.reserve(grid.size());

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const EigenSystem es = hermitian_eigen(h(grid.node(j)));
    const double e = es.values[k];
    if (k > 0 && e - es.values[k - 1] < kMinGap) {
      throw DegeneracyError("adiabatic_phase: gap below the level closed at t=" +
                            std::to_string(grid.node(j)));
    }
    if (k + 1 < es.values.size() && es.values[k + 1] - e < kMinGap) {
      throw DegeneracyError("adiabatic_phase: gap above the level closed at t=" +
                            std::to_string(grid.node(j)));
    }
    Vector v = es.vectors.col(k);
    if (!frame.empty()) {
      // Continuity: make <v_{j-1}, v_j> real and positive.
      const Complex o = inner(frame.back(), v);
      if (std::abs(o) < 1e-12) {
        throw DegeneracyError("adiabatic_phase: eigenvector jumped between nodes");
      }
      v *= std::conj(o) / std::abs(o);
    }
    frame.push_back(std::move(v));
    energy.push_back(e);
  }

  // Closure v(T) = v(0): the transported frame returns with a phase that we
  // spread linearly over the loop.
  const Complex closing = inner(frame.front(), frame.back());
  if (std::abs(std::abs(closing) - 1.0) > 1e-6) {
    throw ContractError("adiabatic_phase: the Hamiltonian loop does not close");
  }
  const double mismatch = std::arg(closing);
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const double fraction = static_cast<double>(j) / static_cast<double>(grid.steps());
    frame[j] *= std::polar(1.0, -mismatch * fraction);
  }

  return {wrap_angle(accumulated_connection(frame).back()), -trapezoid(energy, grid.dt())};
}

}  // namespace geophase
