#pragma once

// Discrete calculus on sampled state trajectories.
//
// Two kinds of connection estimates live here. Pointwise values of
// <v, i dv/dt> use central differences. Integrals of the connection use the
// phase increments -arg<v_j, v_{j+1}>: they are midpoint-accurate and shift
// by exactly alpha(t_j) - alpha(0) under v -> exp(i alpha) v, so holonomies
// and phases built from them are gauge invariant to roundoff.

#include <span>
#include <vector>

#include "geophase/linalg.hpp"

namespace geophase {

/// dv/dt at every node: central differences inside, second-order one-sided
/// differences at both ends. Needs at least three samples; with two it
/// falls back to the forward difference.
std::vector<Vector> time_derivative(std::span<const Vector> states, double dt);

/// Re <v_j, i dv_j/dt> at every node.
std::vector<double> connection_samples(std::span<const Vector> states, double dt);

/// Largest |Im <v_j, i dv_j/dt>| over the nodes (zero for normalized paths).
double connection_imaginary_defect(std::span<const Vector> states, double dt);

/// A_j = integral_0^{t_j} <v, i dv/dt> dt, accumulated from phase increments.
/// Throws UndefinedPhaseError if two consecutive samples are orthogonal.
std::vector<double> accumulated_connection(std::span<const Vector> states);

/// Trapezoid rule over uniformly spaced samples.
double trapezoid(std::span<const double> samples, double dt);

/// Running trapezoid integral, same length as the input, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> samples, double dt);

}  // namespace geophase
