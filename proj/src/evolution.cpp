#include "geophase/evolution.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "geophase/errors.hpp"

namespace geophase {

TimeGrid::TimeGrid(double start, double end, std::size_t steps)
    : start_(start), end_(end), steps_(steps) {
  if (steps == 0) throw DimensionError("TimeGrid: at least one step is required");
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw NumericError("TimeGrid: non-finite endpoint");
  }
  if (!(end > start)) throw ContractError("TimeGrid: end must be greater than start");
}

double TimeGrid::node(std::size_t j) const {
  if (j == steps_) return end_;
  return start_ + static_cast<double>(j) * dt();
}

HamiltonianTrajectory::HamiltonianTrajectory(Eigen::Index dim, Evaluator evaluator)
    : dim_(dim), evaluator_(std::move(evaluator)) {
  if (dim <= 0) throw DimensionError("HamiltonianTrajectory: dimension must be positive");
  if (!evaluator_) throw ContractError("HamiltonianTrajectory: empty evaluator");
}

Matrix HamiltonianTrajectory::operator()(double t) const {
  Matrix h = evaluator_(t);
  if (h.rows() != dim_ || h.cols() != dim_) {
    throw DimensionError("HamiltonianTrajectory: evaluation at t=" + std::to_string(t) +
                         " has the wrong shape");
  }
  if (!all_finite(h)) throw NumericError("HamiltonianTrajectory: non-finite entry");
  require_hermitian(h, "HamiltonianTrajectory");
  return h;
}

PropagatorPath propagate(const HamiltonianTrajectory& h, const TimeGrid& grid) {
  const double dt = grid.dt();
  PropagatorPath out{grid, {}};
  out.matrices.reserve(grid.size());
  out.matrices.push_back(Matrix::Identity(h.dim(), h.dim()));
  for (std::size_t j = 0; j < grid.steps(); ++j) {
    const Matrix step = mat_exp((-kI * dt) * h(grid.midpoint(j)));
    out.matrices.push_back(step * out.matrices.back());
  }
  return out;
}

AmplitudePath amplitude_path(const PropagatorPath& u, const Vector& initial) {
  if (initial.size() != u.matrices.front().rows()) {
    throw DimensionError("amplitude_path: initial state has the wrong dimension");
  }
  if (std::abs(initial.norm() - 1.0) > tol::kNormalized) {
    throw ContractError("amplitude_path: initial state is not normalized");
  }
  AmplitudePath out{u.grid, {}};
  out.states.reserve(u.matrices.size());
  for (const Matrix& m : u.matrices) out.states.push_back(m * initial);
  return out;
}

double schrodinger_residual(const AmplitudePath& psi, const HamiltonianTrajectory& h,
                            const std::function<double(double)>& shift) {
  const TimeGrid& grid = psi.grid;
  const double dt = grid.dt();
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.steps(); ++j) {
    const double tm = grid.midpoint(j);
    const Vector& a = psi.states[j];
    const Vector& b = psi.states[j + 1];
    Vector hmid = h(tm) * (0.5 * (a + b));
    if (shift) hmid -= shift(tm) * (0.5 * (a + b));
    const double r = ((kI / dt) * (b - a) - hmid).norm();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace geophase
