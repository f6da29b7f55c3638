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

#include "topoflux/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "topoflux/errors.hpp"
#include "topoflux/units.hpp"

namespace topoflux {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// ---- strict JSON access -------------------------------------------------

const json& require_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
  return j;
}

void check_keys(const json& obj, const std::string& ptr,
                std::initializer_list<const char*> allowed) {
  require_object(obj, ptr);
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(ptr + "/" + key, "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number_at(const json& obj, const char* key, const std::string& ptr) {
  const json* v = find(obj, key);
  const std::string p = ptr + "/" + key;
  if (v == nullptr) throw ConfigError(p, "missing required number");
  if (!v->is_number()) throw ConfigError(p, "expected a number");
  return v->get<double>();
}

std::optional<double> optional_number_at(const json& obj, const char* key,
                                         const std::string& ptr) {
  const json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (!v->is_number()) throw ConfigError(ptr + "/" + key, "expected a number or null");
  return v->get<double>();
}

long integer_at(const json& obj, const char* key, const std::string& ptr) {
  const json* v = find(obj, key);
  const std::string p = ptr + "/" + key;
  if (v == nullptr) throw ConfigError(p, "missing required integer");
  if (!v->is_number_integer()) throw ConfigError(p, "expected an integer");
  return v->get<long>();
}

std::optional<long> optional_integer_at(const json& obj, const char* key,
                                        const std::string& ptr) {
  const json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (!v->is_number_integer()) throw ConfigError(ptr + "/" + key, "expected an integer or null");
  return v->get<long>();
}

std::string string_at(const json& obj, const char* key, const std::string& ptr) {
  const json* v = find(obj, key);
  const std::string p = ptr + "/" + key;
  if (v == nullptr) throw ConfigError(p, "missing required string");
  if (!v->is_string()) throw ConfigError(p, "expected a string");
  return v->get<std::string>();
}

bool bool_at(const json& obj, const char* key, const std::string& ptr) {
  const json* v = find(obj, key);
  const std::string p = ptr + "/" + key;
  if (v == nullptr) throw ConfigError(p, "missing required boolean");
  if (!v->is_boolean()) throw ConfigError(p, "expected a boolean");
  return v->get<bool>();
}

const json& section(const json& root, const char* key) {
  const json* v = find(root, key);
  if (v == nullptr) throw ConfigError(std::string("/") + key, "missing section");
  return require_object(*v, std::string("/") + key);
}

void require(bool ok, const std::string& ptr, const std::string& what) {
  if (!ok) throw ConfigError(ptr, what);
}

// ---- presets --------------------------------------------------------------

json standard_device_json() {
  return {{"alpha", 0.8},          {"beta", 15.0},        {"EJ_GHz", 158.0},
          {"EJ_over_EC", 80.0},    {"delta0_GHz", 32.5},  {"vF_m_per_s", 1e5},
          {"L_um", 5.0},           {"temperature_mK", 20.0},
          {"resonance_GHz", 50.0}};
}

json base_preset() {
  return {
      {"schemaVersion", 1},
      {"device", standard_device_json()},
      {"hilbert", {{"fockLevels", 2}, {"maxExcitations", 1}}},
      {"pulse", {{"areaOverPi", -1.0}, {"shape", "rectangular"}, {"rampTime_ns", 0.0}}},
      {"noise", {{"enabled", true}, {"Tf1_ns", 900.0}, {"Tf2_ns", 20.0}}},
      {"integration", json::object()},
      {"overrides", json::object()},
      {"sweep",
       {{"axis", "eta1"},
        {"lo_per_ns", 0.0},
        {"hi_per_ns", 0.01},
        {"points", 21},
        {"family", {0, 1, 2, 3, 4, 5, 6}}}},
      {"robustness", {{"errorFraction", 0.1}, {"samples", 200}, {"seed", 1}}},
  };
}

// ---- parallel map with order-deterministic output -------------------------

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string fidelity_label(double area_over_pi) {
  if (area_over_pi == -1.0) return "F1";
  if (area_over_pi == -0.5) return "F2";
  return "F";
}

}  // namespace

// ---- experiments ------------------------------------------------------------

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kFig2a: return "fig2a";
    case Experiment::kFig2b: return "fig2b";
    case Experiment::kFig3a: return "fig3a";
    case Experiment::kFig3b: return "fig3b";
    case Experiment::kRobustness: return "robustness";
    case Experiment::kAltParams: return "altParams";
    case Experiment::kCustom: return "custom";
  }
  return "custom";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
  for (Experiment e : {Experiment::kFig2a, Experiment::kFig2b, Experiment::kFig3a,
                       Experiment::kFig3b, Experiment::kRobustness,
                       Experiment::kAltParams, Experiment::kCustom}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

nlohmann::json preset_json(Experiment e) {
  json j = base_preset();
  j["experiment"] = std::string(to_string(e));
  switch (e) {
    case Experiment::kFig2b:
      j["pulse"]["areaOverPi"] = -0.5;
      break;
    case Experiment::kFig3b:
      j["sweep"]["axis"] = "eta2";
      j["sweep"]["hi_per_ns"] = 0.1;
      break;
    case Experiment::kAltParams:
      j["device"]["alpha"] = 0.97;
      j["device"]["beta"] = 10.0;
      j["device"]["EJ_GHz"] = 3100.0;
      j["device"]["EJ_over_EC"] = 30000.0;
      j["device"]["delta0_GHz"] = 78.0;
      break;
    case Experiment::kCustom:
      j["hilbert"]["maxExcitations"] = nullptr;
      break;
    default:
      break;
  }
  return j;
}

std::vector<double> SweepSpec::axis_values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  return v;
}

void SweepSpec::validate() const {
  require(lo < hi, "/sweep/lo_per_ns", "lo must be below hi");
  require(lo >= 0.0, "/sweep/lo_per_ns", "rates must be non-negative");
  require(points >= 2, "/sweep/points", "need at least 2 points");
  require(!family.empty(), "/sweep/family", "need at least one g'/g ratio");
}

ScenarioConfig parse_config(const nlohmann::json& user) {
  require_object(user, "");
  const json* version = find(user, "schemaVersion");
  require(version != nullptr, "/schemaVersion", "missing schemaVersion");
  require(version->is_number_integer() && version->get<long>() == 1, "/schemaVersion",
          "unsupported schemaVersion (expected 1)");
  const json* exp = find(user, "experiment");
  require(exp != nullptr && exp->is_string(), "/experiment",
          "exactly one experiment name is required");
  const auto experiment = experiment_from_string(exp->get<std::string>());
  require(experiment.has_value(), "/experiment",
          "unknown experiment '" + exp->get<std::string>() +
              "' (fig2a, fig2b, fig3a, fig3b, robustness, altParams, custom)");

  json j = preset_json(*experiment);
  j.merge_patch(user);

  check_keys(j, "", {"schemaVersion", "experiment", "device", "hilbert", "pulse", "noise",
                     "integration", "overrides", "sweep", "robustness", "seed"});
  ScenarioConfig c;
  c.experiment = *experiment;

  {
    const std::string p = "/device";
    const json& d = section(j, "device");
    check_keys(d, p, {"alpha", "beta", "EJ_GHz", "EJ_over_EC", "delta0_GHz", "vF_m_per_s",
                      "L_um", "temperature_mK", "phiC_rad", "resonance_GHz"});
    DeviceParams& dev = c.device;
    dev.alpha = number_at(d, "alpha", p);
    require(dev.alpha > 0.5 && dev.alpha < 1.0, p + "/alpha", "alpha must lie in (0.5, 1)");
    dev.beta = number_at(d, "beta", p);
    require(dev.beta >= 1.0, p + "/beta", "beta must be >= 1");
    dev.EJ = units::ghz_to_angular(number_at(d, "EJ_GHz", p));
    require(dev.EJ > 0.0, p + "/EJ_GHz", "must be positive");
    dev.EJ_over_EC = number_at(d, "EJ_over_EC", p);
    require(dev.EJ_over_EC > 0.0, p + "/EJ_over_EC", "must be positive");
    dev.delta0 = units::ghz_to_angular(number_at(d, "delta0_GHz", p));
    require(dev.delta0 > 0.0, p + "/delta0_GHz", "must be positive");
    dev.vF = units::meters_per_second_to_um_per_ns(number_at(d, "vF_m_per_s", p));
    require(dev.vF > 0.0, p + "/vF_m_per_s", "must be positive");
    dev.L = number_at(d, "L_um", p);
    require(dev.L > 0.0, p + "/L_um", "must be positive");
    dev.temperature = units::millikelvin_to_angular(number_at(d, "temperature_mK", p));
    require(dev.temperature > 0.0, p + "/temperature_mK", "must be positive");
    c.phiC = optional_number_at(d, "phiC_rad", p);
    if (auto r = optional_number_at(d, "resonance_GHz", p)) {
      require(*r > 0.0, p + "/resonance_GHz", "must be positive");
      c.resonanceTarget = units::ghz_to_angular(*r);
    }
  }
  {
    const std::string p = "/hilbert";
    const json& h = section(j, "hilbert");
    check_keys(h, p, {"fockLevels", "maxExcitations"});
    const long n = integer_at(h, "fockLevels", p);
    require(n >= 2 && n <= 6, p + "/fockLevels", "must lie in [2, 6]");
    c.fockLevels = static_cast<int>(n);
    if (auto cap = optional_integer_at(h, "maxExcitations", p)) {
      require(*cap >= 1, p + "/maxExcitations", "must be >= 1 or null");
      c.maxExcitations = static_cast<int>(*cap);
    }
  }
  {
    const std::string p = "/pulse";
    const json& pu = section(j, "pulse");
    check_keys(pu, p, {"areaOverPi", "shape", "rampTime_ns"});
    c.pulse.areaOverPi = number_at(pu, "areaOverPi", p);
    require(c.pulse.areaOverPi != 0.0, p + "/areaOverPi", "must be non-zero");
    const std::string shape = string_at(pu, "shape", p);
    if (shape == "rectangular") {
      c.pulse.shape = PulseShape::kRectangular;
    } else if (shape == "sinSquaredRamp") {
      c.pulse.shape = PulseShape::kSinSquaredRamp;
    } else {
      throw ConfigError(p + "/shape", "expected 'rectangular' or 'sinSquaredRamp'");
    }
    c.pulse.rampTime = optional_number_at(pu, "rampTime_ns", p).value_or(0.0);
    require(c.pulse.rampTime >= 0.0, p + "/rampTime_ns", "must be non-negative");
  }
  {
    const std::string p = "/noise";
    const json& n = section(j, "noise");
    check_keys(n, p, {"enabled", "Tf1_ns", "Tf2_ns"});
    c.noise.enabled = bool_at(n, "enabled", p);
    const double inf = std::numeric_limits<double>::infinity();
    c.noise.Tf1 = optional_number_at(n, "Tf1_ns", p).value_or(inf);
    c.noise.Tf2 = optional_number_at(n, "Tf2_ns", p).value_or(inf);
    require(c.noise.Tf1 > 0.0, p + "/Tf1_ns", "must be positive (null for no relaxation)");
    require(c.noise.Tf2 > 0.0, p + "/Tf2_ns", "must be positive (null for no dephasing)");
    c.device.Tf1 = c.noise.Tf1;
    c.device.Tf2 = c.noise.Tf2;
  }
  {
    const std::string p = "/integration";
    const json& in = section(j, "integration");
    check_keys(in, p, {"dt_ns", "samplePeriod_ns"});
    c.integration.dt = optional_number_at(in, "dt_ns", p);
    require(!c.integration.dt || *c.integration.dt > 0.0, p + "/dt_ns", "must be positive");
    c.integration.samplePeriod = optional_number_at(in, "samplePeriod_ns", p);
    require(!c.integration.samplePeriod || *c.integration.samplePeriod > 0.0,
            p + "/samplePeriod_ns", "must be positive");
  }
  {
    const std::string p = "/overrides";
    const json& o = section(j, "overrides");
    check_keys(o, p, {"g_GHz", "gPrime_GHz", "E_GHz"});
    auto conv = [](std::optional<double> v) -> std::optional<double> {
      if (!v) return std::nullopt;
      return units::ghz_to_angular(*v);
    };
    c.overrides.g = conv(optional_number_at(o, "g_GHz", p));
    c.overrides.gPrime = conv(optional_number_at(o, "gPrime_GHz", p));
    c.overrides.E = conv(optional_number_at(o, "E_GHz", p));
    require(!c.overrides.g || *c.overrides.g != 0.0, p + "/g_GHz", "must be non-zero");
  }
  {
    const std::string p = "/sweep";
    const json& s = section(j, "sweep");
    check_keys(s, p, {"axis", "lo_per_ns", "hi_per_ns", "points", "family"});
    const std::string axis = string_at(s, "axis", p);
    if (axis == "eta1") {
      c.sweep.axis = SweepAxis::kEta1;
    } else if (axis == "eta2") {
      c.sweep.axis = SweepAxis::kEta2;
    } else {
      throw ConfigError(p + "/axis", "expected 'eta1' or 'eta2'");
    }
    c.sweep.lo = number_at(s, "lo_per_ns", p);
    c.sweep.hi = number_at(s, "hi_per_ns", p);
    c.sweep.points = static_cast<int>(integer_at(s, "points", p));
    const json* fam = find(s, "family");
    require(fam != nullptr && fam->is_array(), p + "/family", "expected an array of numbers");
    c.sweep.family.clear();
    for (std::size_t i = 0; i < fam->size(); ++i) {
      require((*fam)[i].is_number(), p + "/family/" + std::to_string(i), "expected a number");
      c.sweep.family.push_back((*fam)[i].get<double>());
    }
    c.sweep.validate();
  }
  {
    const std::string p = "/robustness";
    const json& r = section(j, "robustness");
    check_keys(r, p, {"errorFraction", "samples", "seed"});
    c.robustness.errorFraction = number_at(r, "errorFraction", p);
    require(c.robustness.errorFraction >= 0.0 && c.robustness.errorFraction <= 0.5,
            p + "/errorFraction", "must lie in [0, 0.5]");
    const long samples = integer_at(r, "samples", p);
    require(samples >= 1, p + "/samples", "must be >= 1");
    c.robustness.samples = static_cast<int>(samples);
    const long seed = integer_at(r, "seed", p);
    require(seed >= 0, p + "/seed", "must be non-negative");
    c.robustness.seed = static_cast<std::uint64_t>(seed);
  }
  if (const json* seed = find(j, "seed")) {
    require(seed->is_number_unsigned(), "/seed", "expected a non-negative integer");
    c.robustness.seed = seed->get<std::uint64_t>();
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

ScenarioConfig preset_config(Experiment e) {
  return parse_config({{"schemaVersion", 1}, {"experiment", std::string(to_string(e))}});
}

nlohmann::json to_json(const ScenarioConfig& c) {
  auto opt = [](std::optional<double> v, double scale = 1.0) -> json {
    return v ? json(*v * scale) : json(nullptr);
  };
  auto finite_or_null = [](double v) -> json {
    return std::isfinite(v) ? json(v) : json(nullptr);
  };
  const double to_ghz = 1.0 / units::kTwoPi;
  json family = json::array();
  for (double f : c.sweep.family) family.push_back(f);
  return {
      {"schemaVersion", 1},
      {"experiment", std::string(to_string(c.experiment))},
      {"device",
       {{"alpha", c.device.alpha},
        {"beta", c.device.beta},
        {"EJ_GHz", units::angular_to_ghz(c.device.EJ)},
        {"EJ_over_EC", c.device.EJ_over_EC},
        {"delta0_GHz", units::angular_to_ghz(c.device.delta0)},
        {"vF_m_per_s", c.device.vF * 1e3},
        {"L_um", c.device.L},
        {"temperature_mK", units::angular_to_millikelvin(c.device.temperature)},
        {"phiC_rad", opt(c.phiC)},
        {"resonance_GHz", opt(c.resonanceTarget, to_ghz)}}},
      {"hilbert",
       {{"fockLevels", c.fockLevels},
        {"maxExcitations", c.maxExcitations ? json(*c.maxExcitations) : json(nullptr)}}},
      {"pulse",
       {{"areaOverPi", c.pulse.areaOverPi},
        {"shape", c.pulse.shape == PulseShape::kRectangular ? "rectangular" : "sinSquaredRamp"},
        {"rampTime_ns", c.pulse.rampTime}}},
      {"noise",
       {{"enabled", c.noise.enabled},
        {"Tf1_ns", finite_or_null(c.noise.Tf1)},
        {"Tf2_ns", finite_or_null(c.noise.Tf2)}}},
      {"integration",
       {{"dt_ns", opt(c.integration.dt)}, {"samplePeriod_ns", opt(c.integration.samplePeriod)}}},
      {"overrides",
       {{"g_GHz", opt(c.overrides.g, to_ghz)},
        {"gPrime_GHz", opt(c.overrides.gPrime, to_ghz)},
        {"E_GHz", opt(c.overrides.E, to_ghz)}}},
      {"sweep",
       {{"axis", c.sweep.axis == SweepAxis::kEta1 ? "eta1" : "eta2"},
        {"lo_per_ns", c.sweep.lo},
        {"hi_per_ns", c.sweep.hi},
        {"points", c.sweep.points},
        {"family", family}}},
      {"robustness",
       {{"errorFraction", c.robustness.errorFraction},
        {"samples", c.robustness.samples},
        {"seed", c.robustness.seed}}},
  };
}

// ---- resolution ----------------------------------------------------------

ResolvedScenario resolve(const ScenarioConfig& cfg) {
  ResolvedScenario r;
  r.config = cfg;
  r.device = cfg.device;
  const Overrides& ov = cfg.overrides;
  const bool full_override = ov.g && ov.gPrime && ov.E;

  try {
    const StaticParams statics = derive_statics(r.device);
    r.device.phiC = cfg.phiC ? *cfg.phiC
                             : solve_resonant_phase(r.device,
                                                    cfg.resonanceTarget.value_or(statics.omegaF));
    r.derived = derive_couplings(r.device);
    r.validity = validity_report(r.device, r.device.phiC);
    r.shorthandG = shorthand_g(r.device, r.device.phiC);
  } catch (const Error&) {
    if (!full_override) throw;
    r.derived.reset();
    r.validity.reset();
  }

  if (r.validity && !ov.any() && !r.validity->required_checks_pass()) {
    std::ostringstream os;
    os << "device parameters leave the modelled regime:";
    for (const auto& f : r.validity->regimeFlags) {
      if (f.required && !f.passed) {
        os << " " << f.name << " = " << f.value << " (threshold " << f.threshold << ")";
      }
    }
    os << "; adjust the device or supply explicit overrides";
    throw ValidityError(os.str());
  }

  r.g = ov.g.value_or(r.derived ? r.derived->g : 0.0);
  r.gPrime = ov.gPrime.value_or(r.derived ? r.derived->gPrime : 0.0);
  r.E = ov.E.value_or(r.derived ? r.derived->energyE : 0.0);

  r.spec = HilbertSpec(cfg.fockLevels, cfg.maxExcitations);
  r.area = cfg.pulse.areaOverPi * kPi;
  try {
    r.duration = pulse_duration_for_area(r.area, r.g, cfg.pulse.shape, cfg.pulse.rampTime);
  } catch (const DomainError& e) {
    throw ConfigError("/pulse", e.what());
  }

  PulseSegment seg;
  seg.duration = r.duration;
  seg.g = r.g;
  seg.gPrime = r.gPrime;
  seg.phaseFreq = r.E;
  seg.shape = cfg.pulse.shape;
  seg.rampTime = cfg.pulse.rampTime;
  r.schedule.segments = {seg};
  r.schedule.samplePeriod = cfg.integration.samplePeriod.value_or(r.duration / 200.0);
  r.noise = cfg.noise;
  r.dt = cfg.integration.dt.value_or(default_dt(r.schedule));

  r.initial = StateVector::basis(r.spec, Spin::kUp, 0);
  CVector target = CVector::Zero(r.spec.dim());
  target(r.spec.index(Spin::kUp, 0)) = std::cos(r.area / 2.0);
  target(r.spec.index(Spin::kDown, 1)) = Complex(0.0, std::sin(r.area / 2.0));
  r.target = StateVector(target);
  r.fidelityLabel = fidelity_label(cfg.pulse.areaOverPi);
  return r;
}

SimResult run_resolved(const ResolvedScenario& scenario) {
  SimResult out;
  out.scenario = scenario;
  out.trajectory = evolve(DensityMatrix::pure(scenario.initial), scenario.schedule,
                          scenario.noise, scenario.dt, scenario.spec);
  out.fidelity = fidelity_pure(scenario.target, out.trajectory.finalState);
  out.finalDiagnostics = out.trajectory.finalState.diagnostics();
  return out;
}

SimResult run_scenario(const ScenarioConfig& cfg) { return run_resolved(resolve(cfg)); }

double fidelity_with_couplings(const ResolvedScenario& nominal, double g, double gPrime,
                               double E) {
  PulseSchedule schedule = nominal.schedule;
  for (auto& seg : schedule.segments) {
    seg.g = g;
    seg.gPrime = gPrime;
    seg.phaseFreq = E;
  }
  const double dt = nominal.config.integration.dt.value_or(default_dt(schedule));
  const Trajectory traj = evolve(DensityMatrix::pure(nominal.initial), schedule,
                                 nominal.noise, dt, nominal.spec);
  return fidelity_pure(nominal.target, traj.finalState);
}

// ---- sweeps ---------------------------------------------------------------

namespace {

double eta1_of(const NoiseParams& n) { return n.enabled ? 0.5 * n.relaxation_rate() : 0.0; }
double eta2_of(const NoiseParams& n) { return n.enabled ? n.dephasing_rate() : 0.0; }

}  // namespace

ScenarioConfig sweep_point_config(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                  double axis_value, double ratio) {
  ScenarioConfig point = cfg;
  double eta1 = eta1_of(cfg.noise);
  double eta2 = eta2_of(cfg.noise);
  (sweep.axis == SweepAxis::kEta1 ? eta1 : eta2) = axis_value;
  point.noise = NoiseParams::from_rates(eta1, eta2);
  point.device.Tf1 = point.noise.Tf1;
  point.device.Tf2 = point.noise.Tf2;

  const ResolvedScenario base = resolve(cfg);
  point.overrides.g = base.g;
  point.overrides.gPrime = ratio * base.g;
  point.overrides.E = base.E;
  return point;
}

SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep) {
  sweep.validate();
  SweepResult out;
  out.sweep = sweep;
  out.fixedEta1 = eta1_of(cfg.noise);
  out.fixedEta2 = eta2_of(cfg.noise);
  out.axisValues = sweep.axis_values();
  const std::size_t cols = sweep.family.size();
  std::vector<ScenarioConfig> points;
  points.reserve(out.axisValues.size() * cols);
  for (double v : out.axisValues) {
    for (double ratio : sweep.family) points.push_back(sweep_point_config(cfg, sweep, v, ratio));
  }
  std::vector<double> flat(points.size());
  parallel_for(points.size(), [&](std::size_t i) { flat[i] = run_scenario(points[i]).fidelity; });
  for (std::size_t row = 0; row < out.axisValues.size(); ++row) {
    out.fidelity.emplace_back(flat.begin() + static_cast<long>(row * cols),
                              flat.begin() + static_cast<long>((row + 1) * cols));
  }
  return out;
}

RobustnessResult run_robustness(const ScenarioConfig& cfg, double errorFraction, int samples,
                                std::uint64_t seed) {
  if (!(errorFraction >= 0.0 && errorFraction <= 0.5)) {
    throw ConfigError("/robustness/errorFraction", "must lie in [0, 0.5]");
  }
  if (samples < 1) throw ConfigError("/robustness/samples", "must be >= 1");

  const ResolvedScenario nominal = resolve(cfg);
  RobustnessResult out;
  out.errorFraction = errorFraction;
  out.samples = samples;
  out.seed = seed;
  out.nominal = run_resolved(nominal).fidelity;

  // Factors are drawn up front so results do not depend on scheduling.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(1.0 - errorFraction, 1.0 + errorFraction);
  std::vector<std::array<double, 3>> draws(static_cast<std::size_t>(samples));
  for (auto& d : draws) {
    for (double& x : d) x = factor(rng);
  }
  out.sampleFidelities.resize(draws.size());
  parallel_for(draws.size(), [&](std::size_t i) {
    const auto& d = draws[i];
    out.sampleFidelities[i] =
        fidelity_with_couplings(nominal, nominal.g * d[1], nominal.gPrime * d[2], nominal.E * d[0]);
  });
  out.min = *std::min_element(out.sampleFidelities.begin(), out.sampleFidelities.end());
  out.max = *std::max_element(out.sampleFidelities.begin(), out.sampleFidelities.end());
  double sum = 0.0;
  for (double f : out.sampleFidelities) sum += f;
  out.mean = sum / static_cast<double>(samples);

  for (int mask = 0; mask < 8; ++mask) {
    RobustnessCorner c;
    c.signE = (mask & 4) ? 1 : -1;
    c.signG = (mask & 2) ? 1 : -1;
    c.signGPrime = (mask & 1) ? 1 : -1;
    out.corners.push_back(c);
  }
  parallel_for(out.corners.size(), [&](std::size_t i) {
    auto& c = out.corners[i];
    c.fidelity = fidelity_with_couplings(nominal, nominal.g * (1.0 + c.signG * errorFraction),
                                         nominal.gPrime * (1.0 + c.signGPrime * errorFraction),
                                         nominal.E * (1.0 + c.signE * errorFraction));
  });
  out.worstCorner = *std::min_element(
      out.corners.begin(), out.corners.end(),
      [](const RobustnessCorner& a, const RobustnessCorner& b) { return a.fidelity < b.fidelity; });
  return out;
}

}  // namespace topoflux
