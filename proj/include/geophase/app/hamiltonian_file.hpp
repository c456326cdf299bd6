#pragma once

// Hamiltonians given as samples on a uniform grid.
//
//   dim D steps S [duration T]
//   <row for node 0>
//   ...
//   <row for node S>
//
// Each row holds the D*D entries in row-major order as 2*D*D numbers
// (real part, imaginary part). `#` starts a comment. T defaults to 1.
// Between nodes the Hamiltonian is interpolated linearly.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "geophase/evolution.hpp"

namespace geophase::app {

class SampledHamiltonian {
 public:
  SampledHamiltonian(double duration, std::vector<Matrix> nodes);

  Eigen::Index dim() const { return nodes_.front().rows(); }
  std::size_t steps() const { return nodes_.size() - 1; }
  double duration() const { return duration_; }
  const std::vector<Matrix>& nodes() const { return nodes_; }

  Matrix at(double t) const;
  HamiltonianTrajectory trajectory() const;

 private:
  double duration_;
  std::vector<Matrix> nodes_;
};

/// Throws ConfigError with the offending line on malformed or non-Hermitian
/// input.
SampledHamiltonian parse_sampled_hamiltonian(std::istream& in, const std::string& source);
SampledHamiltonian load_sampled_hamiltonian(const std::filesystem::path& path);

}  // namespace geophase::app
