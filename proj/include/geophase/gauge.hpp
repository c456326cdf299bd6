#pragma once

// Time-indexed basis frames and the phase freedom v_k -> exp(i alpha_k(t)) v_k
// that leaves every physical amplitude unchanged up to a constant.

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "geophase/evolution.hpp"

namespace geophase {

/// vectors[k][j] is basis vector k at grid node j.
struct BasisFrame {
  TimeGrid grid;
  std::vector<std::vector<Vector>> vectors;

  std::size_t labels() const { return vectors.size(); }
  const Vector& at(std::size_t k, std::size_t j) const { return vectors[k][j]; }
};

/// Trigonometric polynomial
///   c0 + sum_{m=1..M} a_m cos(2 pi m t / period) + b_m sin(2 pi m t / period)
/// with M <= 6.
class TrigPolynomial {
 public:
  static constexpr std::size_t kMaxDegree = 6;

  TrigPolynomial(double period, double constant, std::vector<double> cos_coeffs,
                 std::vector<double> sin_coeffs);

  /// Coefficients uniform in [-amplitude, amplitude], degree drawn in [1, 6].
  static TrigPolynomial random(double period, double amplitude, std::mt19937_64& rng);

  double value(double t) const;
  double derivative(double t) const;

 private:
  double period_;
  double constant_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// One real phase function per frame label, with its time derivative.
class GaugeFunction {
 public:
  struct Component {
    std::function<double(double)> value;
    std::function<double(double)> rate;
  };

  GaugeFunction() = default;
  explicit GaugeFunction(std::vector<Component> components);
  explicit GaugeFunction(const std::vector<TrigPolynomial>& polys);

  static GaugeFunction zero(std::size_t labels);
  static GaugeFunction random(std::size_t labels, double period, double amplitude,
                              std::mt19937_64& rng);

  std::size_t labels() const { return components_.size(); }
  double value(std::size_t k, double t) const { return components_[k].value(t); }
  double rate(std::size_t k, double t) const { return components_[k].rate(t); }

  /// alpha_k -> -alpha_k for every label.
  GaugeFunction negated() const;

 private:
  std::vector<Component> components_;
};

/// Samples `vector_at(k, t)` on every node for labels 0..labels-1.
BasisFrame sample_frame(const TimeGrid& grid, std::size_t labels,
                        const std::function<Vector(std::size_t, double)>& vector_at);

/// v_k(t) = exp(-i phi_k(t)) psi_k(t) with phi_k(t) = arg <psi_k(0), psi_k(t)>.
/// Throws OrthogonalityCrossingError where |<psi_k(0), psi_k(t)>| < 1e-10.
BasisFrame frame_from_amplitudes(std::span<const AmplitudePath> paths);

/// v'_k(t) = exp(i alpha_k(t)) v_k(t).
BasisFrame apply_gauge(const BasisFrame& frame, const GaugeFunction& g);

/// <v_k, i dv_k/dt> at every node (central differences).
std::vector<double> connection(const BasisFrame& frame, std::size_t k);

/// v_bar_k(t) = v_k(t) exp(i integral_0^t <v_k, i dv_k/dt> dt).
BasisFrame parallel_transport_frame(const BasisFrame& frame);

/// <v_bar_k(0), v_bar_k(T)> of the parallel-transported frame.
Complex holonomy(const BasisFrame& frame, std::size_t k);

/// Matrices <v_n, H v_m> - <v_n, i dv_m/dt> at every node.
struct EffectiveHamiltonianPath {
  TimeGrid grid;
  std::vector<Matrix> matrices;
};

EffectiveHamiltonianPath effective_hamiltonian(const BasisFrame& frame,
                                               const HamiltonianTrajectory& h);

/// True iff d(alpha_k)/dt agrees across all labels at every node to 1e-10,
/// the condition under which one Hamiltonian still drives every regauged
/// amplitude.
bool check_universal_hamiltonian_constraint(const GaugeFunction& g, const TimeGrid& grid);

/// sum_k w_k <v_k(0), v_k(T)> exp{i integral_0^T (<v_k, i dv_k/dt> - <v_k, H v_k>) dt}
/// which equals Tr U(T) rho(0) for a frame built from Schrodinger amplitudes
/// and is unchanged by any gauge applied to the frame.
Complex frame_trace(const BasisFrame& frame, std::span<const double> weights,
                    const HamiltonianTrajectory& h);

/// psi_k(t) = v_k(t) exp{-i integral_0^t (<v_k, H v_k> - <v_k, i dv_k/dt>) dt}.
/// Valid for frames whose effective Hamiltonian is diagonal.
std::vector<AmplitudePath> amplitudes_from_frame(const BasisFrame& frame,
                                                 const HamiltonianTrajectory& h);

}  // namespace geophase
