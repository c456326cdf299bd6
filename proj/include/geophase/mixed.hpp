#pragma once

// Density matrices, mixed-state phases and visibility, the constituent-wise
// regauging of the propagator, and purification / partial trace.

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "geophase/evolution.hpp"
#include "geophase/gauge.hpp"

namespace geophase {

/// Hermitian, unit trace, positive semidefinite (all to 1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Orthonormal states with probabilities: rho = sum_k w_k |k><k|.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<Vector> states);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Vector>& states() const { return states_; }
  std::size_t size() const { return weights_.size(); }
  Eigen::Index dim() const { return states_.front().size(); }

 private:
  std::vector<double> weights_;
  std::vector<Vector> states_;
};

/// sum_{n,m} a(n,m) |s_n> |phi_m>, with |s_n> the columns of system_basis.
class PurifiedState {
 public:
  PurifiedState(Matrix coefficients, Matrix system_basis);
  explicit PurifiedState(Matrix coefficients);

  const Matrix& coefficients() const { return a_; }
  const Matrix& system_basis() const { return basis_; }

 private:
  Matrix a_;
  Matrix basis_;
};

DensityMatrix density_from_ensemble(const Ensemble& e);

/// Eigen-ensemble of rho (weights ascending, deterministic phases).
Ensemble ensemble_of(const DensityMatrix& rho);

/// U rho U^dag. Throws ContractError if U is not unitary to 1e-10.
DensityMatrix evolve_density(const DensityMatrix& rho, const Matrix& u);

struct MixedTotalPhase {
  double gamma;       // arg Tr[U(T) rho(0)]
  double visibility;  // |Tr[U(T) rho(0)]|
};

/// Throws UndefinedPhaseError when the visibility is below 1e-12.
MixedTotalPhase mixed_total_phase(const DensityMatrix& rho0, const Matrix& u_final);

/// 1 + v cos(chi - gamma) at each chi. A zero-visibility state gives 1.
std::vector<double> interference_curve(const DensityMatrix& rho0, const Matrix& u_final,
                                       std::span<const double> chi);

/// psi_k(t) = U(t)|k> for every member of the ensemble.
std::vector<AmplitudePath> constituent_paths(const PropagatorPath& u, const Ensemble& e);

struct MixedDynamicalPhase {
  double value;               // -i integral Tr[rho0 U^dag dU/dt] dt, real
  double imaginary_residual;  // |Im| of the central-difference estimate
};

MixedDynamicalPhase mixed_dynamical_phase(const Ensemble& e, const PropagatorPath& u);
MixedDynamicalPhase mixed_dynamical_phase(const DensityMatrix& rho0, const PropagatorPath& u);

/// U'(t) = U(t) sum_k exp(i theta_k(t)) |k><k|.
/// Throws DimensionError unless the basis spans the space.
PropagatorPath transform_evolution(const PropagatorPath& u, const GaugeFunction& theta,
                                   const Ensemble& basis);

/// arg sum_k w_k <k|U(T)|k> exp(i theta_k(T)), the total phase after
/// transform_evolution.
double reweighted_total_phase(const Ensemble& e, const Matrix& u_final,
                              std::span<const double> theta_final);

/// arg sum_k w_k <psi_k(0), psi_k(T)> exp(i integral <psi_k, i dpsi_k/dt> dt).
double singh_phase(std::span<const double> weights, std::span<const AmplitudePath> paths);

struct TransportResiduals {
  double weak;                  // max_t |Tr rho0 U^dag dU/dt|
  std::vector<double> strong;   // per k: max_t |<k|U^dag dU/dt|k>|
};

TransportResiduals transport_conditions(const Ensemble& e, const PropagatorPath& u);
TransportResiduals transport_conditions(const DensityMatrix& rho0, const PropagatorPath& u);

/// Partial trace over the ancilla: rho = B (a a^dag) B^dag.
DensityMatrix reduce(const PurifiedState& pure);

/// Schmidt-form purification a(n,n) = sqrt(lambda_n) in rho's eigenbasis
/// (largest weight first), optionally rotated on the ancilla index by
/// `ancilla_unitary`. Throws CapacityError if ancilla_dim < rank(rho).
PurifiedState purify(const DensityMatrix& rho, Eigen::Index ancilla_dim,
                     const std::optional<Matrix>& ancilla_unitary = std::nullopt);

/// a(n,m) -> exp(i alpha_n) a(n,m): constant phases on the system states.
PurifiedState apply_system_phases(const PurifiedState& pure, std::span<const double> alpha);

/// Random full-rank density matrix (normalized Ginibre G G^dag).
DensityMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64& rng);

/// Haar-ish random unitary from the QR of a complex Gaussian matrix.
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace geophase
