#pragma once

// Time-ordered propagators on a uniform grid and the Schrodinger amplitudes
// they generate.

#include <cstddef>
#include <functional>
#include <vector>

#include "geophase/linalg.hpp"

namespace geophase {

/// Uniform grid t_j = start + j * (end - start) / steps, j = 0..steps.
class TimeGrid {
 public:
  TimeGrid(double start, double end, std::size_t steps);

  double start() const { return start_; }
  double end() const { return end_; }
  std::size_t steps() const { return steps_; }
  std::size_t size() const { return steps_ + 1; }
  double duration() const { return end_ - start_; }
  double dt() const { return (end_ - start_) / static_cast<double>(steps_); }
  double node(std::size_t j) const;
  double midpoint(std::size_t j) const { return start_ + (static_cast<double>(j) + 0.5) * dt(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double start_;
  double end_;
  std::size_t steps_;
};

/// t -> H(t). Every evaluation is checked for Hermiticity and shape.
class HamiltonianTrajectory {
 public:
  using Evaluator = std::function<Matrix(double)>;

  HamiltonianTrajectory(Eigen::Index dim, Evaluator evaluator);

  Eigen::Index dim() const { return dim_; }
  Matrix operator()(double t) const;

 private:
  Eigen::Index dim_;
  Evaluator evaluator_;
};

/// U(t_j) for every grid node; matrices[0] is the identity.
struct PropagatorPath {
  TimeGrid grid;
  std::vector<Matrix> matrices;

  const Matrix& final() const { return matrices.back(); }
};

/// psi(t_j) for every grid node.
struct AmplitudePath {
  TimeGrid grid;
  std::vector<Vector> states;

  const Vector& initial() const { return states.front(); }
  const Vector& final() const { return states.back(); }
};

/// Exponential midpoint product
///   U(t_{j+1}) = exp(-i H(t_j + dt/2) dt) U(t_j).
/// Second order, unitary to roundoff at every node.
PropagatorPath propagate(const HamiltonianTrajectory& h, const TimeGrid& grid);

/// psi(t_j) = U(t_j) psi0, including j = 0. Throws ContractError if psi0 is not normalized.
AmplitudePath amplitude_path(const PropagatorPath& u, const Vector& initial);

/// Largest midpoint residual
///   || i (psi_{j+1} - psi_j)/dt - (H(t_m) - shift(t_m)) (psi_{j+1} + psi_j)/2 ||
/// over all segments. `shift` is an optional scalar energy offset, the
/// -d(theta)/dt of a uniformly regauged Hamiltonian.
double schrodinger_residual(const AmplitudePath& psi, const HamiltonianTrajectory& h,
                            const std::function<double(double)>& shift = {});

}  // namespace geophase
