#include "geophase/app/hamiltonian_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "geophase/app/config.hpp"

namespace geophase::app {

SampledHamiltonian::SampledHamiltonian(double duration, std::vector<Matrix> nodes)
    : duration_(duration), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw DimensionError("SampledHamiltonian: need at least two nodes");
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw ContractError("SampledHamiltonian: duration must be positive");
  }
  for (const Matrix& m : nodes_) {
    if (m.rows() != nodes_.front().rows() || m.cols() != m.rows()) {
      throw DimensionError("SampledHamiltonian: nodes differ in shape");
    }
    require_hermitian(m, "SampledHamiltonian");
  }
}

Matrix SampledHamiltonian::at(double t) const {
  const double s = std::clamp(t / duration_, 0.0, 1.0) * static_cast<double>(steps());
  const auto j = std::min(static_cast<std::size_t>(s), steps() - 1);
  const double f = s - static_cast<double>(j);
  return (1.0 - f) * nodes_[j] + f * nodes_[j + 1];
}

HamiltonianTrajectory SampledHamiltonian::trajectory() const {
  auto self = std::make_shared<SampledHamiltonian>(*this);
  return HamiltonianTrajectory(dim(), [self](double t) { return self->at(t); });
}

namespace {

bool next_content_line(std::istream& in, std::string& text, std::size_t& line) {
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

SampledHamiltonian parse_sampled_hamiltonian(std::istream& in, const std::string& source) {
  std::string text;
  std::size_t line = 0;
  if (!next_content_line(in, text, line)) throw ConfigError(source, line, "header", "file is empty");

  long long dim = -1;
  long long steps = -1;
  double duration = 1.0;
  {
    std::istringstream hs(text);
    std::string word;
    while (hs >> word) {
      if (word == "dim") {
        hs >> dim;
      } else if (word == "steps") {
        hs >> steps;
      } else if (word == "duration") {
        hs >> duration;
      } else {
        throw ConfigError(source, line, "header", "unexpected token '" + word + "'");
      }
      if (hs.fail()) throw ConfigError(source, line, "header", "missing number after '" + word + "'");
    }
  }
  if (dim < 1 || dim > 64) throw ConfigError(source, line, "dim", "dimension must lie in [1, 64]");
  if (steps < 1) throw ConfigError(source, line, "steps", "need at least one step");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ConfigError(source, line, "duration", "must be positive");
  }

  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  for (long long node = 0; node <= steps; ++node) {
    if (!next_content_line(in, text, line)) {
      throw ConfigError(source, line, "node " + std::to_string(node), "missing row");
    }
    std::istringstream rs(text);
    std::vector<double> xs;
    double x = 0.0;
    while (rs >> x) xs.push_back(x);
    const std::string field = "node " + std::to_string(node);
    if (!rs.eof()) throw ConfigError(source, line, field, "non-numeric entry");
    if (xs.size() != static_cast<std::size_t>(2 * d * d)) {
      throw ConfigError(source, line, field,
                        "expected " + std::to_string(2 * d * d) + " numbers, got " + std::to_string(xs.size()));
    }
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto i = static_cast<std::size_t>(2 * (r * d + c));
        m(r, c) = Complex(xs[i], xs[i + 1]);
      }
    }
    if (!all_finite(m)) throw ConfigError(source, line, field, "non-finite entry");
    if (!is_hermitian(m)) throw ConfigError(source, line, field, "matrix is not Hermitian");
    nodes.push_back(0.5 * (m + m.adjoint()));
  }
  if (next_content_line(in, text, line)) throw ConfigError(source, line, "trailer", "extra data after last node");
  return SampledHamiltonian(duration, std::move(nodes));
}

SampledHamiltonian load_sampled_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "hamiltonian_file", "cannot open file");
  return parse_sampled_hamiltonian(in, path.string());
}

}  // namespace geophase::app
