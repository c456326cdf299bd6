#include "geophase/sampling.hpp"

#include <cmath>

#include "geophase/errors.hpp"

namespace geophase {

std::vector<Vector> time_derivative(std::span<const Vector> states, double dt) {
  const std::size_t n = states.size();
  if (n < 2) throw DimensionError("time_derivative: need at least two samples");
  std::vector<Vector> out(n);
  if (n == 2) {
    out[0] = (states[1] - states[0]) / dt;
    out[1] = out[0];
    return out;
  }
  out[0] = (-3.0 * states[0] + 4.0 * states[1] - states[2]) / (2.0 * dt);
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (states[j + 1] - states[j - 1]) / (2.0 * dt);
  out[n - 1] = (3.0 * states[n - 1] - 4.0 * states[n - 2] + states[n - 3]) / (2.0 * dt);
  return out;
}

std::vector<double> connection_samples(std::span<const Vector> states, double dt) {
  const auto d = time_derivative(states, dt);
  std::vector<double> out(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) out[j] = (kI * inner(states[j], d[j])).real();
  return out;
}

double connection_imaginary_defect(std::span<const Vector> states, double dt) {
  const auto d = time_derivative(states, dt);
  double worst = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    worst = std::max(worst, std::abs((kI * inner(states[j], d[j])).imag()));
  }
  return worst;
}

std::vector<double> accumulated_connection(std::span<const Vector> states) {
  std::vector<double> out(states.size(), 0.0);
  for (std::size_t j = 0; j + 1 < states.size(); ++j) {
    const Complex overlap = inner(states[j], states[j + 1]);
    out[j + 1] = out[j] - checked_arg(overlap, 1e-12, "accumulated_connection");
  }
  return out;
}

double trapezoid(std::span<const double> samples, double dt) {
  if (samples.size() < 2) return 0.0;
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t j = 1; j + 1 < samples.size(); ++j) sum += samples[j];
  return sum * dt;
}

std::vector<double> cumulative_trapezoid(std::span<const double> samples, double dt) {
  std::vector<double> out(samples.size(), 0.0);
  for (std::size_t j = 1; j < samples.size(); ++j) {
    out[j] = out[j - 1] + 0.5 * dt * (samples[j - 1] + samples[j]);
  }
  return out;
}

}  // namespace geophase
