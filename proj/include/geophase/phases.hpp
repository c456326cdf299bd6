#pragma once

// Phase functionals of a single pure-state trajectory.
//
// Sign conventions (shared by every module):
//   total      = arg <psi(0), psi(T)>
//   dynamical  = -integral <psi, H psi> dt
//   geometric  = arg{ <psi(0), psi(T)> exp(i integral <psi, i dpsi/dt> dt) }
// so that geometric = total - dynamical (mod 2 pi) for Schrodinger paths.

#include <cstddef>

#include "geophase/evolution.hpp"

namespace geophase {

struct TotalPhase {
  double angle;      // (-pi, pi]
  double magnitude;  // |<psi(0), psi(T)>|
};

/// Per-trajectory summary.
struct PhaseReport {
  double total;               // (-pi, pi]
  double dynamical;           // accumulated, not wrapped
  double geometric;           // wrap(total - dynamical)
  double overlap_magnitude;   // in [0, 1]
  double transport_residual;  // max |<psi, dpsi/dt>| over interior nodes
};

/// Throws UndefinedPhaseError when |<psi(0), psi(T)>| < 1e-12.
TotalPhase total_phase(const AmplitudePath& psi);

/// -integral <psi, H psi> dt by the trapezoid rule on the path's grid.
double dynamical_phase(const AmplitudePath& psi, const HamiltonianTrajectory& h);

/// The same quantity from the path alone, -integral <psi, i dpsi/dt> dt, with
/// central differences and the trapezoid rule.
double kinematic_dynamical_phase(const AmplitudePath& psi);

/// Non-adiabatic geometric phase of a (possibly non-cyclic) path.
double geometric_phase_pure(const AmplitudePath& psi);

/// psi_bar(t) = exp(i integral_0^t <psi, i dpsi/dt> dt) psi(t).
AmplitudePath parallel_transport_amplitude(const AmplitudePath& psi);

/// max_j |<psi_j, dpsi_j/dt>| over interior nodes.
double transport_residual(const AmplitudePath& psi);

PhaseReport phase_report(const AmplitudePath& psi, const HamiltonianTrajectory& h);

struct AdiabaticPhase {
  double geometric;  // (-pi, pi]
  double dynamical;  // -integral E_level dt
};

/// Berry phase of the `level`-th instantaneous eigenvector (ascending
/// order) around the closed loop H(grid.start()) -> H(grid.end()).
/// Throws DegeneracyError if the level comes within 1e-6 of a neighbour and
/// ContractError if the loop does not close.
AdiabaticPhase adiabatic_phase(const HamiltonianTrajectory& h, const TimeGrid& grid,
                               std::size_t level);

}  // namespace geophase
