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

#include "topoflux/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "topoflux/errors.hpp"
#include "topoflux/units.hpp"

namespace topoflux {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "t_ns,re_rho11,im_rho11,re_rho22,im_rho22,re_rho12,im_rho12,re_rho21,im_rho21,"
    "trace,purity,min_eig";

double ghz(double omega) { return units::angular_to_ghz(omega); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json invariants_json(const LocalInvariants& inv) {
  return {{"G1", {{"re", inv.G1.real()}, {"im", inv.G1.imag()}}}, {"G2", inv.G2}};
}

json matrix_json(const Eigen::Matrix4cd& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json candidate_json(const CpCandidate& c) {
  return {{"matrix", matrix_json(c.gate.matrix())},
          {"invariants", invariants_json(c.invariants)},
          {"fidelityToCz", c.fidelityToCz},
          {"locallyEquivalentToCz", c.locallyEquivalentToCz}};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double fields[] = {traj.times[i],          traj.rho11[i].real(), traj.rho11[i].imag(),
                             traj.rho22[i].real(),   traj.rho22[i].imag(), traj.rho12[i].real(),
                             traj.rho12[i].imag(),   traj.rho21[i].real(), traj.rho21[i].imag(),
                             traj.trace[i],          traj.purity[i],       traj.minEigenvalue[i]};
    for (std::size_t k = 0; k < std::size(fields); ++k) {
      if (k) os << ',';
      os << format_double(fields[k]);
    }
    os << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw IoError("trajectory CSV header does not match the column contract");
  }
  Trajectory traj;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) throw IoError("trajectory CSV row has " + std::to_string(f.size()) + " fields");
    std::vector<double> v;
    for (const auto& s : f) v.push_back(std::stod(s));
    traj.times.push_back(v[0]);
    traj.rho11.emplace_back(v[1], v[2]);
    traj.rho22.emplace_back(v[3], v[4]);
    traj.rho12.emplace_back(v[5], v[6]);
    traj.rho21.emplace_back(v[7], v[8]);
    traj.trace.push_back(v[9]);
    traj.purity.push_back(v[10]);
    traj.minEigenvalue.push_back(v[11]);
  }
  return traj;
}

void write_trajectory_svg(const Trajectory& traj, std::ostream& os) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  const double t_max = traj.times.empty() ? 1.0 : std::max(traj.times.back(), 1e-300);
  auto x = [&](double t) { return kMargin + (kWidth - 2 * kMargin) * t / t_max; };
  auto y = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * v; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  auto polyline = [&](auto value_of, const char* colour) {
    os << "  <polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (i) os << ' ';
      os << fmt(x(traj.times[i])) << ',' << fmt(y(value_of(i)));
    }
    os << "\"/>\n";
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line x1=\"" << kMargin << "\" y1=\"" << y(0) << "\" x2=\"" << kWidth - kMargin
     << "\" y2=\"" << y(0) << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << kMargin << "\" y1=\"" << y(0) << "\" x2=\"" << kMargin << "\" y2=\""
     << y(1) << "\" stroke=\"black\"/>\n";
  os << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">t (ns), 0 to " << fmt(t_max) << "</text>\n";
  os << "  <text x=\"" << kMargin - 8 << "\" y=\"" << y(1) + 4
     << "\" text-anchor=\"end\" font-size=\"12\">1</text>\n";
  os << "  <text x=\"" << kMargin - 8 << "\" y=\"" << y(0) + 4
     << "\" text-anchor=\"end\" font-size=\"12\">0</text>\n";
  polyline([&](std::size_t i) { return traj.rho11[i].real(); }, "#1f77b4");
  polyline([&](std::size_t i) { return traj.rho22[i].real(); }, "#d62728");
  polyline([&](std::size_t i) { return std::abs(traj.rho12[i]); }, "#2ca02c");
  const char* labels[] = {"rho11", "rho22", "|rho12|"};
  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c"};
  for (int k = 0; k < 3; ++k) {
    os << "  <text x=\"" << kWidth - kMargin - 60 << "\" y=\"" << kMargin + 15 * k
       << "\" font-size=\"12\" fill=\"" << colours[k] << "\">" << labels[k] << "</text>\n";
  }
  os << "</svg>\n";
}

json resolved_json(const ResolvedScenario& r) {
  json j;
  j["config"] = to_json(r.config);
  const DeviceParams& d = r.device;
  j["device"] = {{"alpha", d.alpha},
                 {"beta", d.beta},
                 {"EJ_rad_per_ns", d.EJ},
                 {"EC_rad_per_ns", d.EC()},
                 {"EJ_over_EC", d.EJ_over_EC},
                 {"delta0_rad_per_ns", d.delta0},
                 {"vF_um_per_ns", d.vF},
                 {"L_um", d.L},
                 {"phiC_rad", d.phiC},
                 {"Tf1_ns", finite_or_null(d.Tf1)},
                 {"Tf2_ns", finite_or_null(d.Tf2)},
                 {"temperature_rad_per_ns", d.temperature}};
  if (r.derived) {
    const DerivedCouplings& c = *r.derived;
    j["derived"] = {{"theta", c.theta},
                    {"zeta", c.zeta},
                    {"omegaF_GHz", ghz(c.omegaF)},
                    {"lambdaPhi", c.lambdaPhi},
                    {"E_GHz", ghz(c.energyE)},
                    {"dEdPhi_GHz", ghz(c.dEdPhi)},
                    {"g_GHz", ghz(c.g)},
                    {"gPrime_GHz", ghz(c.gPrime)},
                    {"shorthandG_GHz", ghz(r.shorthandG)},
                    {"ratioFormula", ratio_formula(r.device)}};
  } else {
    j["derived"] = nullptr;
  }
  if (r.validity) {
    const ValidityReport& v = *r.validity;
    json flags = json::array();
    for (const auto& f : v.regimeFlags) {
      flags.push_back({{"name", f.name},
                       {"value", f.value},
                       {"threshold", f.threshold},
                       {"passed", f.passed},
                       {"required", f.required}});
    }
    j["validity"] = {{"ratioGOverGPrime", v.ratioGOverGPrime},
                     {"energyOverG", v.energyOverG},
                     {"tunnelingRate_GHz", ghz(v.tunnelingRate)},
                     {"tunnelingErrorProb", v.tunnelingErrorProb},
                     {"thermalOccupation", v.thermalOccupation},
                     {"regimeFlags", flags}};
  } else {
    j["validity"] = nullptr;
  }
  j["effective"] = {{"g_GHz", ghz(r.g)},
                    {"gPrime_GHz", ghz(r.gPrime)},
                    {"E_GHz", ghz(r.E)},
                    {"source", r.config.overrides.any() ? "overrides" : "pipeline"}};
  j["pulse"] = {{"area_rad", r.area}, {"duration_ns", r.duration}};
  j["hilbert"] = {{"dim", r.spec.dim()},
                  {"fockLevels", r.spec.fock_levels()},
                  {"maxExcitations", r.spec.max_excitations() ? json(*r.spec.max_excitations())
                                                              : json(nullptr)}};
  j["integration"] = {{"dt_ns", r.dt}, {"samplePeriod_ns", r.schedule.samplePeriod}};
  return j;
}

json summary_json(const SimResult& result) {
  const auto& r = result.scenario;
  const auto& d = result.finalDiagnostics;
  json j;
  j["schemaVersion"] = 1;
  j["experiment"] = std::string(to_string(r.config.experiment));
  j["fidelity"] = {{"label", r.fidelityLabel}, {"value", result.fidelity}};
  j["final"] = {{"time_ns", result.trajectory.times.back()},
                {"traceError", d.trace_error},
                {"hermiticityError", d.hermiticity_error},
                {"minEigenvalue", d.min_eigenvalue},
                {"purity", d.purity}};
  j["samples"] = result.trajectory.size();
  j["resolved"] = resolved_json(r);
  return j;
}

json sweep_json(const SweepResult& result) {
  json rows = json::array();
  for (std::size_t i = 0; i < result.axisValues.size(); ++i) {
    rows.push_back({{"axisValue", result.axisValues[i]}, {"fidelity", result.fidelity[i]}});
  }
  return {{"axis", result.sweep.axis == SweepAxis::kEta1 ? "eta1" : "eta2"},
          {"fixedEta1_per_ns", result.fixedEta1},
          {"fixedEta2_per_ns", result.fixedEta2},
          {"family", result.sweep.family},
          {"rows", rows}};
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  os << (result.sweep.axis == SweepAxis::kEta1 ? "eta1_per_ns" : "eta2_per_ns");
  for (double ratio : result.sweep.family) os << ",F1_gp_over_g_" << format_double(ratio);
  os << '\n';
  for (std::size_t i = 0; i < result.axisValues.size(); ++i) {
    os << format_double(result.axisValues[i]);
    for (double f : result.fidelity[i]) os << ',' << format_double(f);
    os << '\n';
  }
}

json robustness_json(const RobustnessResult& result) {
  auto corner = [](const RobustnessCorner& c) {
    return json{{"signE", c.signE},
                {"signG", c.signG},
                {"signGPrime", c.signGPrime},
                {"fidelity", c.fidelity}};
  };
  json corners = json::array();
  for (const auto& c : result.corners) corners.push_back(corner(c));
  return {{"errorFraction", result.errorFraction},
          {"samples", result.samples},
          {"seed", result.seed},
          {"nominalF1", result.nominal},
          {"monteCarlo", {{"min", result.min}, {"mean", result.mean}, {"max", result.max}}},
          {"corners", corners},
          {"worstCorner", corner(result.worstCorner)}};
}

json gates_json(const CpVerification& v) {
  return {{"cz", invariants_json(v.czInvariants)},
          {"rightmostFirst", candidate_json(v.rightmostFirst)},
          {"leftmostFirst", candidate_json(v.leftmostFirst)},
          {"pulsePrimitive",
           {{"areaOverPi", -1.5},
            {"invariants", invariants_json(v.pulsePrimitive)},
            {"equivalentToCanonicalSqrtSwap", v.primitiveEquivalentToSqrtSwap},
            {"equivalentToSqrtIswap", v.primitiveEquivalentToSqrtIswap}}},
          {"canonicalSqrtSwap", invariants_json(v.canonicalSqrtSwap)},
          {"sqrtIswap", invariants_json(v.sqrtIswap)}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::filesystem::path> emit_outputs(const SimResult& result,
                                                const std::filesystem::path& dir,
                                                const std::vector<OutputFormat>& formats) {
  if (result.trajectory.size() == 0) throw IoError("cannot emit an empty trajectory");
  std::vector<std::filesystem::path> written;
  for (OutputFormat f : formats) {
    std::ostringstream os;
    std::filesystem::path path;
    switch (f) {
      case OutputFormat::kCsv:
        path = dir / "trajectory.csv";
        write_trajectory_csv(result.trajectory, os);
        break;
      case OutputFormat::kSvg:
        path = dir / "trajectory.svg";
        write_trajectory_svg(result.trajectory, os);
        break;
      case OutputFormat::kJson:
        path = dir / "summary.json";
        os << summary_json(result).dump(2) << '\n';
        break;
    }
    write_text_file(path, os.str());
    written.push_back(path);
  }
  return written;
}

}  // namespace topoflux
