// Copyright 2026 The topoflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: derive, run, sweep, robustness, gates verify.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "topoflux/errors.hpp"
#include "topoflux/gates.hpp"
#include "topoflux/output.hpp"
#include "topoflux/scenario.hpp"

namespace fs = std::filesystem;
using namespace topoflux;

namespace {

struct Options {
  std::string config;
  std::string preset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> formats;
};

ScenarioConfig load(const Options& o, Experiment fallback) {
  if (!o.config.empty() && !o.preset.empty()) {
    throw ConfigError("", "--config and --preset are mutually exclusive");
  }
  ScenarioConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config);
  } else if (!o.preset.empty()) {
    const auto e = experiment_from_string(o.preset);
    if (!e) throw ConfigError("/experiment", "unknown preset '" + o.preset + "'");
    cfg = preset_config(*e);
  } else {
    cfg = preset_config(fallback);
  }
  if (o.seed) cfg.robustness.seed = *o.seed;
  return cfg;
}

void emit_json(const nlohmann::json& j, const Options& o, const char* filename) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(fs::path(o.out) / filename, text);
  }
}

std::vector<OutputFormat> parse_formats(const std::vector<std::string>& names) {
  if (names.empty()) return {OutputFormat::kCsv, OutputFormat::kJson};
  std::vector<OutputFormat> out;
  for (const auto& n : names) {
    if (n == "csv") out.push_back(OutputFormat::kCsv);
    else if (n == "svg") out.push_back(OutputFormat::kSvg);
    else if (n == "json") out.push_back(OutputFormat::kJson);
  }
  return out;
}

int cmd_derive(const Options& o) {
  const ResolvedScenario r = resolve(load(o, Experiment::kFig2a));
  emit_json(resolved_json(r), o, "derive.json");
  return 0;
}

int cmd_run(const Options& o) {
  const SimResult result = run_scenario(load(o, Experiment::kFig2a));
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  for (const auto& p : emit_outputs(result, dir, parse_formats(o.formats))) {
    std::cerr << "wrote " << p.string() << '\n';
  }
  std::cout << result.scenario.fidelityLabel << " = " << format_double(result.fidelity) << '\n';
  return 0;
}

int cmd_sweep(const Options& o) {
  const ScenarioConfig cfg = load(o, Experiment::kFig3a);
  const SweepResult result = run_sweep(cfg, cfg.sweep);
  std::ostringstream csv;
  write_sweep_csv(result, csv);
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(fs::path(o.out) / "sweep.csv", csv.str());
    write_text_file(fs::path(o.out) / "sweep.json", sweep_json(result).dump(2) + "\n");
  }
  return 0;
}

int cmd_robustness(const Options& o) {
  const ScenarioConfig cfg = load(o, Experiment::kRobustness);
  const RobustnessResult result =
      run_robustness(cfg, cfg.robustness.errorFraction, cfg.robustness.samples,
                     cfg.robustness.seed);
  emit_json(robustness_json(result), o, "robustness.json");
  return 0;
}

int cmd_gates_verify(const Options& o) {
  emit_json(gates_json(verify_cp()), o, "gates.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator of topological/flux qubit information transfer"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", opts.config, "Scenario JSON (schemaVersion 1)");
      sub->add_option("--preset", opts.preset,
                      "Built-in scenario: fig2a, fig2b, fig3a, fig3b, robustness, altParams, custom");
      sub->add_option("--seed", opts.seed, "PRNG seed (overrides the config)");
    }
    sub->add_option("--out", opts.out, "Output directory");
  };

  auto* derive = app.add_subcommand("derive", "Parameter pipeline and validity report");
  add_common(derive, true);
  auto* run = app.add_subcommand("run", "Integrate one scenario");
  add_common(run, true);
  run->add_option("--format", opts.formats, "Outputs to write (csv, svg, json)")
      ->check(CLI::IsMember({"csv", "svg", "json"}));
  auto* sweep = app.add_subcommand("sweep", "Fidelity versus decoherence rate and g'/g");
  add_common(sweep, true);
  auto* robust = app.add_subcommand("robustness", "Fidelity under coupling errors");
  add_common(robust, true);
  auto* gates = app.add_subcommand("gates", "Gate compilation checks");
  gates->require_subcommand(1);
  auto* verify = gates->add_subcommand("verify", "CP decomposition and local invariants");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*derive) return cmd_derive(opts);
    if (*run) return cmd_run(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*robust) return cmd_robustness(opts);
    if (*verify) return cmd_gates_verify(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
