#include "geophase/gauge.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "geophase/errors.hpp"
#include "geophase/sampling.hpp"

namespace geophase {

namespace {

void require_valid(const BasisFrame& frame, const char* what) {
  if (frame.vectors.empty()) throw DimensionError(std::string(what) + ": frame has no labels");
  for (const auto& path : frame.vectors) {
    if (path.size() != frame.grid.size()) {
      throw DimensionError(std::string(what) + ": label sampled on the wrong number of nodes");
    }
  }
}

}  // namespace

TrigPolynomial::TrigPolynomial(double period, double constant, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs)
    : period_(period), constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (!(period > 0.0)) throw ContractError("TrigPolynomial: period must be positive");
  if (cos_.size() > kMaxDegree || sin_.size() > kMaxDegree) {
    throw DimensionError("TrigPolynomial: degree above 6");
  }
  cos_.resize(kMaxDegree, 0.0);
  sin_.resize(kMaxDegree, 0.0);
}

TrigPolynomial TrigPolynomial::random(double period, double amplitude, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> degree_dist(1, kMaxDegree);
  std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
  const std::size_t degree = degree_dist(rng);
  const double c0 = coeff(rng);
  std::vector<double> a(degree), b(degree);
  for (std::size_t m = 0; m < degree; ++m) {
    a[m] = coeff(rng);
    b[m] = coeff(rng);
  }
  return TrigPolynomial(period, c0, std::move(a), std::move(b));
}

double TrigPolynomial::value(double t) const {
  double sum = constant_;
  const double base = 2.0 * kPi * t / period_;
  for (std::size_t m = 0; m < kMaxDegree; ++m) {
    const double x = static_cast<double>(m + 1) * base;
    sum += cos_[m] * std::cos(x) + sin_[m] * std::sin(x);
  }
  return sum;
}

double TrigPolynomial::derivative(double t) const {
  double sum = 0.0;
  const double base = 2.0 * kPi * t / period_;
  for (std::size_t m = 0; m < kMaxDegree; ++m) {
    const double k = static_cast<double>(m + 1) * 2.0 * kPi / period_;
    const double x = static_cast<double>(m + 1) * base;
    sum += k * (-cos_[m] * std::sin(x) + sin_[m] * std::cos(x));
  }
  return sum;
}

GaugeFunction::GaugeFunction(std::vector<Component> components)
    : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (!c.value || !c.rate) throw ContractError("GaugeFunction: empty component");
  }
}

GaugeFunction::GaugeFunction(const std::vector<TrigPolynomial>& polys) {
  components_.reserve(polys.size());
  for (const auto& p : polys) {
    components_.push_back({[p](double t) { return p.value(t); },
                           [p](double t) { return p.derivative(t); }});
  }
}

GaugeFunction GaugeFunction::zero(std::size_t labels) {
  std::vector<Component> c(labels, Component{[](double) { return 0.0; }, [](double) { return 0.0; }});
  return GaugeFunction(std::move(c));
}

GaugeFunction GaugeFunction::random(std::size_t labels, double period, double amplitude,
                                    std::mt19937_64& rng) {
  std::vector<TrigPolynomial> polys;
  polys.reserve(labels);
  for (std::size_t k = 0; k < labels; ++k) polys.push_back(TrigPolynomial::random(period, amplitude, rng));
  return GaugeFunction(polys);
}

GaugeFunction GaugeFunction::negated() const {
  std::vector<Component> out;
  out.reserve(components_.size());
  for (const auto& c : components_) {
    out.push_back({[v = c.value](double t) { return -v(t); }, [r = c.rate](double t) { return -r(t); }});
  }
  return GaugeFunction(std::move(out));
}

BasisFrame sample_frame(const TimeGrid& grid, std::size_t labels,
                        const std::function<Vector(std::size_t, double)>& vector_at) {
  BasisFrame frame{grid, std::vector<std::vector<Vector>>(labels)};
  for (std::size_t k = 0; k < labels; ++k) {
    frame.vectors[k].reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) frame.vectors[k].push_back(vector_at(k, grid.node(j)));
  }
  return frame;
}

BasisFrame frame_from_amplitudes(std::span<const AmplitudePath> paths) {
  if (paths.empty()) throw DimensionError("frame_from_amplitudes: no amplitude paths");
  const TimeGrid& grid = paths.front().grid;
  BasisFrame frame{grid, {}};
  frame.vectors.reserve(paths.size());
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const AmplitudePath& psi = paths[k];
    if (!(psi.grid == grid) || psi.states.size() != grid.size()) {
      throw DimensionError("frame_from_amplitudes: paths live on different grids");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (std::abs(inner(paths[l].initial(), psi.initial())) > 1e-8) {
        throw ContractError("frame_from_amplitudes: initial states are not orthogonal");
      }
    }
    std::vector<Vector> v;
    v.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Complex o = inner(psi.initial(), psi.states[j]);
      if (std::abs(o) < 1e-10) {
        throw OrthogonalityCrossingError("frame_from_amplitudes: label " + std::to_string(k) +
                                         " is orthogonal to its initial state at t=" +
                                         std::to_string(grid.node(j)));
      }
      v.push_back((std::conj(o) / std::abs(o)) * psi.states[j]);
    }
    frame.vectors.push_back(std::move(v));
  }
  return frame;
}

BasisFrame apply_gauge(const BasisFrame& frame, const GaugeFunction& g) {
  require_valid(frame, "apply_gauge");
  if (g.labels() != frame.labels()) throw DimensionError("apply_gauge: label count mismatch");
  BasisFrame out = frame;
  for (std::size_t k = 0; k < frame.labels(); ++k) {
    for (std::size_t j = 0; j < frame.grid.size(); ++j) {
      out.vectors[k][j] *= std::polar(1.0, g.value(k, frame.grid.node(j)));
    }
  }
  return out;
}

std::vector<double> connection(const BasisFrame& frame, std::size_t k) {
  require_valid(frame, "connection");
  if (k >= frame.labels()) throw DimensionError("connection: label out of range");
  return connection_samples(frame.vectors[k], frame.grid.dt());
}

BasisFrame parallel_transport_frame(const BasisFrame& frame) {
  require_valid(frame, "parallel_transport_frame");
  BasisFrame out = frame;
  for (std::size_t k = 0; k < frame.labels(); ++k) {
    const auto a = accumulated_connection(frame.vectors[k]);
    for (std::size_t j = 0; j < frame.grid.size(); ++j) out.vectors[k][j] *= std::polar(1.0, a[j]);
  }
  return out;
}

Complex holonomy(const BasisFrame& frame, std::size_t k) {
  require_valid(frame, "holonomy");
  if (k >= frame.labels()) throw DimensionError("holonomy: label out of range");
  const auto& v = frame.vectors[k];
  const double a = accumulated_connection(v).back();
  return inner(v.front(), v.back()) * std::polar(1.0, a);
}

EffectiveHamiltonianPath effective_hamiltonian(const BasisFrame& frame,
                                               const HamiltonianTrajectory& h) {
  require_valid(frame, "effective_hamiltonian");
  const std::size_t n = frame.labels();
  if (frame.vectors[0][0].size() != h.dim()) {
    throw DimensionError("effective_hamiltonian: frame and Hamiltonian dimensions differ");
  }
  std::vector<std::vector<Vector>> derivs;
  derivs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) derivs.push_back(time_derivative(frame.vectors[k], frame.grid.dt()));

  EffectiveHamiltonianPath out{frame.grid, {}};
  out.matrices.reserve(frame.grid.size());
  const auto ni = static_cast<Eigen::Index>(n);
  for (std::size_t j = 0; j < frame.grid.size(); ++j) {
    const Matrix hj = h(frame.grid.node(j));
    Matrix m(ni, ni);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Vector& va = frame.vectors[a][j];
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            inner(va, hj * frame.vectors[b][j]) - kI * inner(va, derivs[b][j]);
      }
    }
    out.matrices.push_back(std::move(m));
  }
  return out;
}

bool check_universal_hamiltonian_constraint(const GaugeFunction& g, const TimeGrid& grid) {
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    for (std::size_t k = 1; k < g.labels(); ++k) {
      if (std::abs(g.rate(k, t) - g.rate(0, t)) > 1e-10) return false;
    }
  }
  return true;
}

namespace {

std::vector<double> energy_samples(const std::vector<Vector>& v, const TimeGrid& grid,
                                   const HamiltonianTrajectory& h) {
  std::vector<double> e(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) e[j] = inner(v[j], h(grid.node(j)) * v[j]).real();
  return e;
}

}  // namespace

Complex frame_trace(const BasisFrame& frame, std::span<const double> weights,
                    const HamiltonianTrajectory& h) {
  require_valid(frame, "frame_trace");
  if (weights.size() != frame.labels()) throw DimensionError("frame_trace: weight count mismatch");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < frame.labels(); ++k) {
    const auto& v = frame.vectors[k];
    const double conn = accumulated_connection(v).back();
    const double energy = trapezoid(energy_samples(v, frame.grid, h), frame.grid.dt());
    sum += weights[k] * inner(v.front(), v.back()) * std::polar(1.0, conn - energy);
  }
  return sum;
}

std::vector<AmplitudePath> amplitudes_from_frame(const BasisFrame& frame,
                                                 const HamiltonianTrajectory& h) {
  require_valid(frame, "amplitudes_from_frame");
  std::vector<AmplitudePath> out;
  out.reserve(frame.labels());
  for (std::size_t k = 0; k < frame.labels(); ++k) {
    const auto& v = frame.vectors[k];
    const auto conn = accumulated_connection(v);
    const auto energy = cumulative_trapezoid(energy_samples(v, frame.grid, h), frame.grid.dt());
    AmplitudePath psi{frame.grid, {}};
    psi.states.reserve(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) psi.states.push_back(std::polar(1.0, conn[j] - energy[j]) * v[j]);
    out.push_back(std::move(psi));
  }
  return out;
}

}  // namespace geophase
