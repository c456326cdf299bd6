// geophase: geometric-phase scenarios, sweeps and gauge campaigns.
//
// Exit codes: 0 success, 1 numerical or I/O failure, 2 configuration error,
// 3 phase undefined (zero overlap or visibility).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geophase/app/config.hpp"
#include "geophase/app/report.hpp"
#include "geophase/app/scenario.hpp"
#include "geophase/errors.hpp"

namespace {

using namespace geophase;
using namespace geophase::app;

struct Flags {
  std::string config;
  std::map<std::string, std::string> fields;
  std::string axis;
  std::string values;
};

std::string sweep_help() {
  std::string text = "CSV columns, in order:\n  ";
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) text += (i ? "," : "") + cols[i];
  text +=
      "\nThe phase columns describe the branch-plus state; gamma_t, visibility,\n"
      "mixed_dynamical_phase and singh_phase describe the configured mixture.\n"
      "Floats carry 12 significant digits; undefined phases print as nan.";
  return text;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("command line", 0, "values", "not a number: '" + item + "'");
    }
  }
  return out;
}

ScenarioConfig build_config(const Flags& flags) {
  ScenarioConfig cfg;
  if (!flags.config.empty()) load_config(cfg, flags.config);
  for (const auto& [key, value] : flags.fields) set_field(cfg, key, value);
  validate_config(cfg);
  return cfg;
}

void emit(const ScenarioConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file " + cfg.output.string());
  out << text;
  if (!out) throw Error("failed writing " + cfg.output.string());
}

void add_scenario_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "key = value scenario file")->check(CLI::ExistingFile);
  const std::pair<const char*, const char*> fields[] = {
      {"--model", "spin or custom-sampled"},
      {"--hamiltonian", "sampled Hamiltonian file (custom-sampled model)"},
      {"--steps", "time steps per run (>= 10, or auto)"},
      {"--horizon", "evolution time, or one-period"},
      {"--mu-b", "field coupling muB"},
      {"--omega", "rotation frequency"},
      {"--theta", "polar angle of the field"},
      {"--big-theta", "mixing angle of the two-state mixture"},
      {"--weights", "comma-separated ensemble weights"},
      {"--states", "comma-separated initial-basis indices, one per weight"},
      {"--seed", "random seed"},
      {"--trials", "gauge trials"},
      {"--gauge-amplitude", "coefficient bound of random gauge functions"},
      {"--dim", "system dimension for purify-demo"},
      {"--format", "csv or json"},
      {"--out", "output path (default stdout)"},
      {"--workers", "concurrent sweep workers"},
  };
  for (const auto& [name, help] : fields) {
    std::string key = std::string(name).substr(2);
    cmd->add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.fields[key] = v; }, help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of pure and mixed quantum states"};
  app.require_subcommand(1);
  Flags flags;

  auto* simulate = app.add_subcommand("simulate", "propagate a scenario and report its phases");
  auto* sweep_cmd = app.add_subcommand("sweep", "scan one spin parameter");
  auto* verify = app.add_subcommand("verify-gauge", "random gauge-invariance campaign");
  auto* spin_cmd = app.add_subcommand("spin-report", "closed-form spin quantities beside numerics");
  auto* purify_cmd = app.add_subcommand("purify-demo", "purification round trip of a random density matrix");
  for (auto* cmd : {simulate, sweep_cmd, verify, spin_cmd, purify_cmd}) add_scenario_flags(cmd, flags);
  sweep_cmd->add_option("--axis", flags.axis, "mu-b, omega, theta or big-theta")->required();
  sweep_cmd->add_option("--values", flags.values, "comma-separated values (may be empty)");
  sweep_cmd->footer(sweep_help());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const ScenarioConfig cfg = build_config(flags);
    std::ostringstream out;
    if (simulate->parsed()) {
      write_report(run_scenario(cfg), cfg.format, out);
    } else if (sweep_cmd->parsed()) {
      const std::vector<double> values = parse_values(flags.values);
      write_sweep(sweep(cfg, flags.axis, values), cfg.format, out);
    } else if (verify->parsed()) {
      write_report(gauge_report(verify_gauge(cfg)), cfg.format, out);
    } else if (spin_cmd->parsed()) {
      write_report(spin_report(cfg), cfg.format, out);
    } else {
      write_report(purify_demo(cfg), cfg.format, out);
    }
    emit(cfg, out.str());
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const UndefinedPhaseError& e) {
    std::cerr << "phase undefined: " << e.what()
              << "\nThe interference overlap vanished, so the fringe has zero visibility and no phase.\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
