#include "geophase/mixed.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "geophase/errors.hpp"
#include "geophase/sampling.hpp"

namespace geophase {

namespace {

constexpr double kDensityTol = 1e-10;

Complex diag_overlap(const Vector& k, const Matrix& u) { return inner(k, u * k); }

}  // namespace

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw DimensionError("DensityMatrix: must be square");
  if (!all_finite(m_)) throw NumericError("DensityMatrix: non-finite entry");
  if (hermiticity_defect(m_) > kDensityTol) throw ContractError("DensityMatrix: not Hermitian");
  m_ = 0.5 * (m_ + m_.adjoint());
  if (std::abs(m_.trace().real() - 1.0) > kDensityTol) {
    throw NormalizationError("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kDensityTol) {
    throw ContractError("DensityMatrix: negative eigenvalue");
  }
}

Ensemble::Ensemble(std::vector<double> weights, std::vector<Vector> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw DimensionError("Ensemble: need one weight per state");
  }
  const Eigen::Index dim = states_.front().size();
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw NormalizationError("Ensemble: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw NormalizationError("Ensemble: weights sum to " + std::to_string(sum));
  }
  for (std::size_t k = 0; k < states_.size(); ++k) {
    if (states_[k].size() != dim) throw DimensionError("Ensemble: states differ in dimension");
    for (std::size_t l = 0; l <= k; ++l) {
      const double expect = (k == l) ? 1.0 : 0.0;
      if (std::abs(inner(states_[l], states_[k]) - expect) > 1e-10) {
        throw ContractError("Ensemble: states are not orthonormal");
      }
    }
  }
}

PurifiedState::PurifiedState(Matrix coefficients, Matrix system_basis)
    : a_(std::move(coefficients)), basis_(std::move(system_basis)) {
  if (basis_.cols() != a_.rows()) throw DimensionError("PurifiedState: basis/coefficient mismatch");
  if (std::abs(a_.squaredNorm() - 1.0) > 1e-12) {
    throw NormalizationError("PurifiedState: coefficients are not normalized");
  }
}

PurifiedState::PurifiedState(Matrix coefficients)
    : PurifiedState(coefficients, Matrix::Identity(coefficients.rows(), coefficients.rows())) {}

DensityMatrix density_from_ensemble(const Ensemble& e) {
  Matrix rho = Matrix::Zero(e.dim(), e.dim());
  for (std::size_t k = 0; k < e.size(); ++k) rho += e.weights()[k] * e.states()[k] * e.states()[k].adjoint();
  return DensityMatrix(std::move(rho));
}

Ensemble ensemble_of(const DensityMatrix& rho) {
  const EigenSystem es = hermitian_eigen(rho.matrix());
  std::vector<double> w(static_cast<std::size_t>(es.values.size()));
  std::vector<Vector> s;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    w[static_cast<std::size_t>(k)] = std::max(0.0, es.values[k]);
    s.push_back(es.vectors.col(k));
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return Ensemble(std::move(w), std::move(s));
}

DensityMatrix evolve_density(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) throw DimensionError("evolve_density: shape mismatch");
  if (!is_unitary(u)) throw ContractError("evolve_density: propagator is not unitary");
  Matrix out = u * rho.matrix() * u.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

MixedTotalPhase mixed_total_phase(const DensityMatrix& rho0, const Matrix& u_final) {
  if (u_final.rows() != rho0.dim() || u_final.cols() != rho0.dim()) {
    throw DimensionError("mixed_total_phase: shape mismatch");
  }
  const Complex tr = (u_final * rho0.matrix()).trace();
  return {checked_arg(tr, 1e-12, "mixed_total_phase"), std::abs(tr)};
}

std::vector<double> interference_curve(const DensityMatrix& rho0, const Matrix& u_final,
                                       std::span<const double> chi) {
  if (u_final.rows() != rho0.dim() || u_final.cols() != rho0.dim()) {
    throw DimensionError("interference_curve: shape mismatch");
  }
  const Complex tr = (u_final * rho0.matrix()).trace();
  std::vector<double> out;
  out.reserve(chi.size());
  // v cos(chi - gamma) = Re(conj(tr) e^{i chi}); no phase needed when v = 0.
  for (double x : chi) out.push_back(1.0 + (std::conj(tr) * std::polar(1.0, x)).real());
  return out;
}

std::vector<AmplitudePath> constituent_paths(const PropagatorPath& u, const Ensemble& e) {
  std::vector<AmplitudePath> out;
  out.reserve(e.size());
  for (const Vector& k : e.states()) out.push_back(amplitude_path(u, k));
  return out;
}

MixedDynamicalPhase mixed_dynamical_phase(const Ensemble& e, const PropagatorPath& u) {
  if (e.dim() != u.matrices.front().rows()) throw DimensionError("mixed_dynamical_phase: shape mismatch");
  const double dt = u.grid.dt();
  double value = 0.0;
  std::vector<Complex> trace(u.grid.size(), 0.0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double w = e.weights()[k];
    if (w == 0.0) continue;
    const AmplitudePath psi = amplitude_path(u, e.states()[k]);
    value -= w * accumulated_connection(psi.states).back();
    const auto d = time_derivative(psi.states, dt);
    for (std::size_t j = 0; j < trace.size(); ++j) trace[j] += w * inner(psi.states[j], d[j]);
  }
  // -i * integral of Tr[rho0 U^dag dU/dt]; its imaginary part is -Re(...).
  std::vector<double> re(trace.size());
  for (std::size_t j = 0; j < trace.size(); ++j) re[j] = trace[j].real();
  return {value, std::abs(trapezoid(re, dt))};
}

MixedDynamicalPhase mixed_dynamical_phase(const DensityMatrix& rho0, const PropagatorPath& u) {
  return mixed_dynamical_phase(ensemble_of(rho0), u);
}

PropagatorPath transform_evolution(const PropagatorPath& u, const GaugeFunction& theta,
                                   const Ensemble& basis) {
  const Eigen::Index dim = u.matrices.front().rows();
  if (static_cast<Eigen::Index>(basis.size()) != dim || basis.dim() != dim) {
    throw DimensionError("transform_evolution: basis does not span the space");
  }
  if (theta.labels() != basis.size()) throw DimensionError("transform_evolution: label mismatch");
  PropagatorPath out{u.grid, {}};
  out.matrices.reserve(u.matrices.size());
  for (std::size_t j = 0; j < u.matrices.size(); ++j) {
    const double t = u.grid.node(j);
    Matrix phase = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Vector& s = basis.states()[k];
      phase += std::polar(1.0, theta.value(k, t)) * s * s.adjoint();
    }
    out.matrices.push_back(u.matrices[j] * phase);
  }
  return out;
}

double reweighted_total_phase(const Ensemble& e, const Matrix& u_final,
                              std::span<const double> theta_final) {
  if (theta_final.size() != e.size()) throw DimensionError("reweighted_total_phase: label mismatch");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    sum += e.weights()[k] * diag_overlap(e.states()[k], u_final) * std::polar(1.0, theta_final[k]);
  }
  return checked_arg(sum, 1e-12, "reweighted_total_phase");
}

double singh_phase(std::span<const double> weights, std::span<const AmplitudePath> paths) {
  if (weights.size() != paths.size() || paths.empty()) {
    throw DimensionError("singh_phase: need one weight per path");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw NormalizationError("singh_phase: weights do not sum to 1");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& s = paths[k].states;
    sum += weights[k] * inner(s.front(), s.back()) * std::polar(1.0, accumulated_connection(s).back());
  }
  return checked_arg(sum, 1e-12, "singh_phase");
}

TransportResiduals transport_conditions(const Ensemble& e, const PropagatorPath& u) {
  const double dt = u.grid.dt();
  TransportResiduals out{0.0, std::vector<double>(e.size(), 0.0)};
  std::vector<Complex> weak(u.grid.size(), 0.0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const AmplitudePath psi = amplitude_path(u, e.states()[k]);
    const auto d = time_derivative(psi.states, dt);
    for (std::size_t j = 0; j < d.size(); ++j) {
      const Complex g = inner(psi.states[j], d[j]);
      out.strong[k] = std::max(out.strong[k], std::abs(g));
      weak[j] += e.weights()[k] * g;
    }
  }
  for (const Complex& g : weak) out.weak = std::max(out.weak, std::abs(g));
  return out;
}

TransportResiduals transport_conditions(const DensityMatrix& rho0, const PropagatorPath& u) {
  return transport_conditions(ensemble_of(rho0), u);
}

DensityMatrix reduce(const PurifiedState& pure) {
  const Matrix& a = pure.coefficients();
  const Matrix& b = pure.system_basis();
  Matrix rho = b * (a * a.adjoint()) * b.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

PurifiedState purify(const DensityMatrix& rho, Eigen::Index ancilla_dim,
                     const std::optional<Matrix>& ancilla_unitary) {
  if (ancilla_dim <= 0) throw CapacityError("purify: ancilla dimension must be positive");
  const EigenSystem es = hermitian_eigen(rho.matrix());
  const Eigen::Index n = rho.dim();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) rank += es.values[k] > 1e-12 ? 1 : 0;
  if (ancilla_dim < rank) {
    throw CapacityError("purify: ancilla dimension " + std::to_string(ancilla_dim) +
                        " is below the rank " + std::to_string(rank));
  }
  // Largest weight first so the support fits into the leading ancilla slots.
  Matrix basis(n, n);
  Matrix a = Matrix::Zero(n, ancilla_dim);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    basis.col(k) = es.vectors.col(src);
    if (k < ancilla_dim && es.values[src] > 1e-12) a(k, k) = std::sqrt(es.values[src]);
  }
  a /= a.norm();
  if (ancilla_unitary) {
    const Matrix& w = *ancilla_unitary;
    if (w.rows() != ancilla_dim || w.cols() != ancilla_dim) {
      throw DimensionError("purify: ancilla unitary has the wrong shape");
    }
    if (!is_unitary(w)) throw ContractError("purify: ancilla rotation is not unitary");
    a = a * w;
  }
  return PurifiedState(std::move(a), std::move(basis));
}

PurifiedState apply_system_phases(const PurifiedState& pure, std::span<const double> alpha) {
  if (static_cast<Eigen::Index>(alpha.size()) != pure.coefficients().rows()) {
    throw DimensionError("apply_system_phases: one phase per system state required");
  }
  Matrix a = pure.coefficients();
  for (Eigen::Index n = 0; n < a.rows(); ++n) a.row(n) *= std::polar(1.0, alpha[static_cast<std::size_t>(n)]);
  return PurifiedState(std::move(a), pure.system_basis());
}

namespace {

Matrix gaussian_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

DensityMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace geophase
