#pragma once

// Spin-1/2 in a magnetic field of fixed magnitude precessing about z:
//   H(t) = -muB (sin(theta) cos(omega t) sx + sin(theta) sin(omega t) sy + cos(theta) sz)
// Everything here is closed form and serves as the oracle for the numerical
// modules.

#include <array>
#include <complex>
#include <span>
#include <utility>

#include "geophase/evolution.hpp"

namespace geophase::spin {

/// Branch "+" follows the lower level -muB (field-aligned spin), "-" the upper.
enum class Branch { plus, minus };

struct SpinParams {
  double mu_b = 1.0;       // coupling times field strength, angular frequency
  double omega = 1.0;      // rotation frequency of the field
  double theta = kPi / 3;  // polar angle of the field
  double big_theta = 0.0;  // mixing angle of the tilde basis / mixed state

  /// Rotation angle that diagonalizes the effective Hamiltonian.
  double alpha() const;
  /// One rotation period 2 pi / omega.
  double period() const;
  /// beta(t) / t = 2 muB cos(alpha) + omega cos(theta - alpha).
  double beta_rate() const;
};

using Spinor = Vector;

struct SpinorPair {
  Spinor plus;
  Spinor minus;
};

/// Throws ContractError unless mu_b, omega, theta, big_theta are finite and
/// omega != 0.
void validate(const SpinParams& p);

HamiltonianTrajectory hamiltonian(const SpinParams& p);

/// atan2(omega sin(theta), 2 muB + omega cos(theta)); pi/2 exactly when the
/// denominator vanishes.
double alpha_of(const SpinParams& p);

/// Instantaneous eigenvectors v_+ (energy -muB) and v_- (energy +muB).
SpinorPair v_basis(const SpinParams& p, double t);

/// The rotated basis w_+/- in which the effective Hamiltonian is diagonal.
SpinorPair w_basis(const SpinParams& p, double t);

/// Exact Schrodinger amplitudes with psi_+/-(0) = w_+/-(0).
SpinorPair exact_amplitudes(const SpinParams& p, double t);

/// <w_+/-, H w_+/-> = -/+ muB cos(alpha).
double w_energy(const SpinParams& p, Branch b);
/// <w_+/-, i dw_+/-/dt> = (omega/2)(1 +/- cos(theta - alpha)).
double w_connection(const SpinParams& p, Branch b);

/// wrap(-pi (1 -/+ cos(theta - alpha))).
double geometric_phase(const SpinParams& p, Branch b);

/// Omega_+ = 2 pi (1 - cos(theta - alpha)).
double solid_angle(const SpinParams& p);

/// (<v, sx v>, <v, sy v>, <v, sz v>) for a normalized two-component state.
std::array<double, 3> bloch_vector(const Spinor& v);

/// Enclosed area (mod 4 pi, in [0, 4 pi)) of the closed geodesic polygon
/// through the given unit vectors, counted positively to the left of the
/// direction of travel.
double spherical_polygon_area(std::span<const std::array<double, 3>> points);

/// 1 + cos[(muB cos(alpha)) T - Omega_+/2], with T one period.
double interference_value(const SpinParams& p);

/// Tilde basis built from w_+/- with mixing angle big_theta and relative
/// phase beta(t).
SpinorPair tilde_basis(const SpinParams& p, double t);

/// Closed forms of <w~_+/-, H w~_+/-> and <w~_+/-, i dw~_+/-/dt> at time t.
double tilde_energy(const SpinParams& p, Branch b, double t);
double tilde_connection(const SpinParams& p, Branch b, double t);

/// Psi_+/- = combinations of psi_+/- that start on the tilde basis.
SpinorPair mixed_amplitudes(const SpinParams& p, double t);

/// Exponential factors relating Psi_+/- to w~_+/-:
/// Psi_b(t) = w~_b(t) * tilde_phase_factor(p, b, t).
Complex tilde_phase_factor(const SpinParams& p, Branch b, double t);

/// cos^2(Theta/2) <psi_+(0), psi_+(T)> + sin^2(Theta/2) <psi_-(0), psi_-(T)>.
Complex mixed_trace(const SpinParams& p);

/// Weights (cos^2(Theta/2), sin^2(Theta/2)) of the decohered mixture.
std::pair<double, double> mixture_weights(const SpinParams& p);

}  // namespace geophase::spin
