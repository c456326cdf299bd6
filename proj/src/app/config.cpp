#include "geophase/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace geophase::app {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "gauge_seed") return "seed";
  if (key == "out") return "output";
  if (key == "hamiltonian") return "hamiltonian_file";
  return key;
}

struct Where {
  const std::string& source;
  std::size_t line;
  const std::string& key;
  [[noreturn]] void fail(const std::string& reason) const { throw ConfigError(source, line, key, reason); }
};

double to_real(const std::string& text, const Where& at) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) at.fail("expected a real number, got '" + text + "'");
  if (!std::isfinite(v)) at.fail("value must be finite");
  return v;
}

std::uint64_t to_unsigned(const std::string& text, const Where& at) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) at.fail("expected a non-negative integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& field,
                         const std::string& reason)
    : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": field '" + field +
            "': " + reason),
      field_(field),
      line_(line) {}

std::size_t effective_steps(const ScenarioConfig& cfg, double horizon, std::size_t samples) {
  if (cfg.steps != 0) return cfg.steps;
  double n = 10.0 * static_cast<double>(samples);
  if (cfg.model == Model::spin) n = std::ceil(std::abs(cfg.spin.omega) * horizon / 1e-3);
  return static_cast<std::size_t>(std::max(n, 1000.0));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "model", "mu_b", "omega", "theta", "big_theta", "hamiltonian_file", "steps", "horizon",
      "weights", "states", "seed", "trials", "gauge_amplitude", "dim", "format", "output", "workers"};
  return keys;
}

void set_field(ScenarioConfig& cfg, const std::string& raw_key, const std::string& raw_value,
               const std::string& source, std::size_t line, const std::filesystem::path& base_dir) {
  const std::string key = canonical_key(trim(raw_key));
  const std::string value = trim(raw_value);
  const Where at{source, line, key};

  if (key == "model") {
    if (value == "spin") {
      cfg.model = Model::spin;
    } else if (value == "custom-sampled" || value == "custom_sampled" || value == "custom") {
      cfg.model = Model::custom_sampled;
    } else {
      at.fail("expected 'spin' or 'custom-sampled', got '" + value + "'");
    }
  } else if (key == "mu_b") {
    cfg.spin.mu_b = to_real(value, at);
  } else if (key == "omega") {
    cfg.spin.omega = to_real(value, at);
  } else if (key == "theta") {
    cfg.spin.theta = to_real(value, at);
  } else if (key == "big_theta") {
    cfg.spin.big_theta = to_real(value, at);
  } else if (key == "hamiltonian_file") {
    if (value.empty()) at.fail("path is empty");
    std::filesystem::path p(value);
    cfg.hamiltonian_file = (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
  } else if (key == "steps") {
    if (value == "auto") {
      cfg.steps = 0;
      return;
    }
    const auto n = to_unsigned(value, at);
    if (n < 10) at.fail("need at least 10 steps");
    cfg.steps = static_cast<std::size_t>(n);
  } else if (key == "horizon") {
    if (value == "one-period" || value == "period" || value.empty()) {
      cfg.horizon.reset();
    } else {
      const double t = to_real(value, at);
      if (!(t > 0.0)) at.fail("horizon must be positive");
      cfg.horizon = t;
    }
  } else if (key == "weights") {
    std::vector<double> w;
    for (const auto& item : split_list(value)) w.push_back(to_real(item, at));
    cfg.weights = std::move(w);
  } else if (key == "states") {
    std::vector<std::size_t> s;
    for (const auto& item : split_list(value)) {
      if (item == "plus" || item == "+") {
        s.push_back(0);
      } else if (item == "minus" || item == "-") {
        s.push_back(1);
      } else {
        s.push_back(static_cast<std::size_t>(to_unsigned(item, at)));
      }
    }
    cfg.states = std::move(s);
  } else if (key == "seed") {
    cfg.seed = to_unsigned(value, at);
  } else if (key == "trials") {
    const auto n = to_unsigned(value, at);
    if (n < 1) at.fail("need at least one trial");
    cfg.trials = static_cast<std::size_t>(n);
  } else if (key == "gauge_amplitude") {
    const double a = to_real(value, at);
    if (a < 0.0) at.fail("amplitude must be non-negative");
    cfg.gauge_amplitude = a;
  } else if (key == "dim") {
    const auto n = to_unsigned(value, at);
    if (n < 1 || n > 64) at.fail("dimension must lie in [1, 64]");
    cfg.dim = static_cast<std::size_t>(n);
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = Format::csv;
    } else if (value == "json") {
      cfg.format = Format::json;
    } else {
      at.fail("expected 'csv' or 'json', got '" + value + "'");
    }
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "workers") {
    const auto n = to_unsigned(value, at);
    if (n < 1) at.fail("need at least one worker");
    cfg.workers = static_cast<std::size_t>(n);
  } else {
    at.fail("unknown key");
  }
}

void parse_config(ScenarioConfig& cfg, std::istream& in, const std::string& source,
                  const std::filesystem::path& base_dir) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, text, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError(source, line, "", "missing key before '='");
    set_field(cfg, key, text.substr(eq + 1), source, line, base_dir);
  }
}

void load_config(ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "config", "cannot open file");
  parse_config(cfg, in, path.string(), path.parent_path());
}

void validate_config(const ScenarioConfig& cfg) {
  const std::string src = "config";
  if (cfg.steps != 0 && cfg.steps < 10) throw ConfigError(src, 0, "steps", "need at least 10 steps");
  if (cfg.model == Model::spin) {
    try {
      spin::validate(cfg.spin);
    } catch (const Error& e) {
      throw ConfigError(src, 0, "omega", e.what());
    }
  } else if (cfg.hamiltonian_file.empty()) {
    throw ConfigError(src, 0, "hamiltonian_file", "required for model custom-sampled");
  }
  if (!cfg.weights.empty()) {
    double sum = 0.0;
    for (double w : cfg.weights) {
      if (w < 0.0) throw ConfigError(src, 0, "weights", "weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream os;
      os.precision(12);
      os << "weights sum to " << sum << ", not 1";
      throw ConfigError(src, 0, "weights", os.str());
    }
  }
  if (!cfg.states.empty()) {
    if (cfg.states.size() != cfg.weights.size()) {
      throw ConfigError(src, 0, "states", "need one state selector per weight");
    }
    if (std::set<std::size_t>(cfg.states.begin(), cfg.states.end()).size() != cfg.states.size()) {
      throw ConfigError(src, 0, "states", "state selectors must be distinct");
    }
  }
  if (cfg.model == Model::spin) {
    if (cfg.weights.size() > 2) throw ConfigError(src, 0, "weights", "a spin has two states");
    for (auto s : cfg.states) {
      if (s > 1) throw ConfigError(src, 0, "states", "spin states are 0 (plus) and 1 (minus)");
    }
  }
}

}  // namespace geophase::app
