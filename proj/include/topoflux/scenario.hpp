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

#pragma once

// Scenario configuration and experiment orchestration.
//
// A config is a JSON document with schemaVersion 1 and one experiment name.
// Each experiment has a preset; keys present in the user's document replace
// preset values (RFC 7386 merge), so {"schemaVersion": 1, "experiment":
// "fig2a"} is a complete config. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "topoflux/device.hpp"
#include "topoflux/dynamics.hpp"
#include "topoflux/hilbert.hpp"

namespace topoflux {

enum class Experiment { kFig2a, kFig2b, kFig3a, kFig3b, kRobustness, kAltParams, kCustom };

std::string_view to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view name);

struct PulseConfig {
  double areaOverPi = -1.0;
  PulseShape shape = PulseShape::kRectangular;
  double rampTime = 0.0;  // ns
};

struct IntegrationConfig {
  std::optional<double> dt;            // ns; automatic when empty
  std::optional<double> samplePeriod;  // ns; pulse duration / 200 when empty
};

// Explicit couplings in rad/ns that bypass the device pipeline.
struct Overrides {
  std::optional<double> g;
  std::optional<double> gPrime;
  std::optional<double> E;

  bool any() const { return g || gPrime || E; }
};

enum class SweepAxis { kEta1, kEta2 };

// eta1 = 1/(2 T_f1), eta2 = 1/T_f2, both in 1/ns.
struct SweepSpec {
  SweepAxis axis = SweepAxis::kEta1;
  double lo = 0.0;
  double hi = 0.01;
  int points = 21;
  std::vector<double> family = {0, 1, 2, 3, 4, 5, 6};  // g'/g

  std::vector<double> axis_values() const;
  void validate() const;
};

struct RobustnessSpec {
  double errorFraction = 0.1;
  int samples = 200;
  std::uint64_t seed = 1;
};

struct ScenarioConfig {
  Experiment experiment = Experiment::kFig2a;
  DeviceParams device;                   // phiC ignored unless phiC is set
  std::optional<double> phiC;            // rad
  std::optional<double> resonanceTarget; // rad/ns; derived omega_f when empty
  int fockLevels = 2;
  std::optional<int> maxExcitations;
  PulseConfig pulse;
  NoiseParams noise;
  IntegrationConfig integration;
  Overrides overrides;
  SweepSpec sweep;
  RobustnessSpec robustness;
};

nlohmann::json preset_json(Experiment e);
// Throws ConfigError (with JSON pointer) on any schema or range violation.
ScenarioConfig parse_config(const nlohmann::json& user);
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig preset_config(Experiment e);
// Full config in on-disk units; parse_config(to_json(c)) reproduces c up to
// unit-conversion rounding.
nlohmann::json to_json(const ScenarioConfig& c);

struct ResolvedScenario {
  ScenarioConfig config;
  DeviceParams device;  // phiC filled in
  std::optional<DerivedCouplings> derived;
  std::optional<ValidityReport> validity;
  double shorthandG = 0.0;
  double g = 0.0;
  double gPrime = 0.0;
  double E = 0.0;
  double area = 0.0;
  double duration = 0.0;
  HilbertSpec spec;
  PulseSchedule schedule;
  NoiseParams noise;
  double dt = 0.0;
  StateVector initial{CVector::Unit(4, 2)};
  StateVector target{CVector::Unit(4, 1)};
  std::string fidelityLabel;
};

ResolvedScenario resolve(const ScenarioConfig& cfg);

struct SimResult {
  ResolvedScenario scenario;
  Trajectory trajectory;
  double fidelity = 0.0;
  DensityDiagnostics finalDiagnostics;
};

SimResult run_scenario(const ScenarioConfig& cfg);
SimResult run_resolved(const ResolvedScenario& scenario);

// Runs a resolved scenario with g, g' and E replaced but the pulse duration
// kept at its nominal value (an unknown error is not compensated).
double fidelity_with_couplings(const ResolvedScenario& nominal, double g,
                               double gPrime, double E);

struct SweepResult {
  SweepSpec sweep;
  double fixedEta1 = 0.0;
  double fixedEta2 = 0.0;
  std::vector<double> axisValues;
  std::vector<std::vector<double>> fidelity;  // [axis point][family member]
};

// Config of one sweep point: noise rates from the axis, g' = ratio * g.
ScenarioConfig sweep_point_config(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                  double axis_value, double ratio);
SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep);

struct RobustnessCorner {
  int signE = 0;
  int signG = 0;
  int signGPrime = 0;
  double fidelity = 0.0;
};

struct RobustnessResult {
  double errorFraction = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double nominal = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  std::vector<double> sampleFidelities;
  std::vector<RobustnessCorner> corners;
  RobustnessCorner worstCorner;
};

RobustnessResult run_robustness(const ScenarioConfig& cfg, double errorFraction,
                                int samples, std::uint64_t seed);

}  // namespace topoflux
