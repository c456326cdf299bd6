#pragma once

// Scenario configuration: a flat `key = value` text format that can also be
// filled field by field from command-line flags.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "geophase/errors.hpp"
#include "geophase/spin_model.hpp"

namespace geophase::app {

enum class Model { spin, custom_sampled };
enum class Format { csv, json };

struct ScenarioConfig {
  Model model = Model::spin;
  spin::SpinParams spin{};
  std::filesystem::path hamiltonian_file;
  std::size_t steps = 0;             // 0: automatic, omega * dt <= 1e-3
  std::optional<double> horizon;     // explicit T; one period (spin) or the file span otherwise
  std::vector<double> weights;       // empty: mixing-angle weights (spin), lowest level (custom)
  std::vector<std::size_t> states;   // initial-basis indices, parallel to weights
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  double gauge_amplitude = 1.0;
  std::size_t dim = 3;               // purify-demo system dimension
  Format format = Format::csv;
  std::filesystem::path output;      // empty: standard output
  std::size_t workers = 1;
};

/// Carries "<source>:<line>: field '<key>': <reason>".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& field,
              const std::string& reason);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

/// Sets one field from its textual value. `line` 0 means "not from a file".
/// Relative file paths resolve against `base_dir`.
void set_field(ScenarioConfig& cfg, const std::string& key, const std::string& value,
               const std::string& source = "command line", std::size_t line = 0,
               const std::filesystem::path& base_dir = {});

/// Reads `key = value` lines; `#` starts a comment, blank lines are ignored.
void parse_config(ScenarioConfig& cfg, std::istream& in, const std::string& source,
                  const std::filesystem::path& base_dir = {});

void load_config(ScenarioConfig& cfg, const std::filesystem::path& path);

/// Cross-field checks: steps >= 10, weights non-negative and summing to 1,
/// one distinct state selector per weight, valid spin parameters.
void validate_config(const ScenarioConfig& cfg);

/// The step count a run over `horizon` uses: cfg.steps when set, otherwise
/// enough steps for omega * dt <= 1e-3 (spin) or ten per sample interval
/// (sampled Hamiltonians, `samples` intervals), never fewer than 1000.
std::size_t effective_steps(const ScenarioConfig& cfg, double horizon, std::size_t samples = 0);

/// Keys understood by set_field, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace geophase::app
