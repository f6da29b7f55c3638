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

#include "topoflux/device.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "topoflux/errors.hpp"
#include "topoflux/units.hpp"

namespace topoflux {

namespace {

// Branch edges are inclusive up to rounding in sin(phi/2).
constexpr double kBranchSlack = 1e-12;

bool on_strong_branch(double lambda) { return lambda <= kStrongBranchLambda + kBranchSlack; }
bool on_off_branch(double lambda) { return lambda >= kOffBranchLambda - kBranchSlack; }

std::string describe_lambda(double lambda) {
  std::ostringstream os;
  os << "Lambda = " << lambda << " lies outside both coupling branches "
     << "(need Lambda <= " << kStrongBranchLambda << " or Lambda >= "
     << kOffBranchLambda << "); move phiC further from zero";
  return os.str();
}

void require_strong_branch(double lambda) {
  if (!on_strong_branch(lambda)) {
    if (on_off_branch(lambda)) {
      std::ostringstream os;
      os << "Lambda = " << lambda
         << " is on the off branch; dE/dphi is only defined for Lambda <= "
         << kStrongBranchLambda;
      throw ValidityError(os.str());
    }
    throw ValidityError(describe_lambda(lambda));
  }
}

}  // namespace

void DeviceParams::validate() const {
  auto fail = [](const std::string& what) { throw DomainError(what); };
  if (!(alpha > 0.5 && alpha < 1.0)) fail("alpha must lie in (0.5, 1)");
  if (!(beta >= 1.0)) fail("beta must be >= 1");
  if (!(EJ > 0.0)) fail("EJ must be positive");
  if (!(EJ_over_EC > 0.0)) fail("EJ_over_EC must be positive");
  if (!(delta0 > 0.0)) fail("delta0 must be positive");
  if (!(vF > 0.0)) fail("vF must be positive");
  if (!(L > 0.0)) fail("L must be positive");
  if (!(Tf1 > 0.0)) fail("Tf1 must be positive");
  if (!(Tf2 > 0.0)) fail("Tf2 must be positive");
  if (!(temperature > 0.0)) fail("temperature must be positive");
}

DeviceParams standard_device() {
  DeviceParams p;
  p.alpha = 0.8;
  p.beta = 15.0;
  p.EJ = units::ghz_to_angular(158.0);
  p.EJ_over_EC = 80.0;
  p.delta0 = units::ghz_to_angular(32.5);
  p.vF = units::meters_per_second_to_um_per_ns(1e5);
  p.L = 5.0;
  p.Tf1 = 900.0;
  p.Tf2 = 20.0;
  p.temperature = units::millikelvin_to_angular(20.0);
  return p;
}

DeviceParams large_ratio_device() {
  DeviceParams p = standard_device();
  p.alpha = 0.97;
  p.beta = 10.0;
  p.EJ = units::ghz_to_angular(3100.0);
  p.EJ_over_EC = 30000.0;
  p.delta0 = units::ghz_to_angular(78.0);
  return p;
}

StaticParams derive_statics(const DeviceParams& p) {
  const double disc = 4.0 * p.alpha * p.alpha - 1.0;
  if (disc <= 0.0) {
    throw DomainError("4 alpha^2 <= 1: no stable flux-qubit minima (alpha=" +
                      std::to_string(p.alpha) + ")");
  }
  StaticParams s;
  s.theta = std::sqrt(disc) / (2.0 * p.alpha * p.beta);
  s.zeta = std::pow(8.0 / p.EJ_over_EC, 0.25) / std::sqrt(p.beta);
  s.omegaF = std::sqrt(8.0 * p.EJ * p.EC());
  return s;
}

double lambda_of_phi(const DeviceParams& p, double phi) {
  return (p.delta0 * p.L / p.vF) * std::sin(phi / 2.0);
}

double energy_of_phi(const DeviceParams& p, double phi) {
  const double lambda = lambda_of_phi(p, phi);
  if (on_strong_branch(lambda)) {
    return -1.9 * (lambda - 0.5) * p.vF / p.L;
  }
  if (on_off_branch(lambda)) {
    return 2.0 * p.delta0 * std::sin(phi / 2.0) * std::exp(-lambda);
  }
  throw ValidityError(describe_lambda(lambda));
}

double dE_dphi(const DeviceParams& p, double phi) {
  require_strong_branch(lambda_of_phi(p, phi));
  // d/dphi of -1.9 (Lambda - 0.5) vF/L with dLambda/dphi = (Delta0 L/vF) cos(phi/2)/2.
  return -0.95 * p.delta0 * std::cos(phi / 2.0);
}

Couplings couplings_at(const DeviceParams& p, double phiC) {
  const StaticParams s = derive_statics(p);
  const double slope = dE_dphi(p, phiC);
  return {s.zeta / std::sqrt(2.0) * slope, s.theta * slope};
}

double solve_resonant_phase(const DeviceParams& p, double omega_target) {
  const double lambda = 0.5 - omega_target * p.L / (1.9 * p.vF);
  const double sine = lambda * p.vF / (p.delta0 * p.L);
  if (std::abs(sine) > 1.0) {
    std::ostringstream os;
    os << "no phase reaches E = " << omega_target << " rad/ns: required "
       << "Lambda = " << lambda << " exceeds the wire maximum "
       << p.delta0 * p.L / p.vF << "; increase Delta0 or L";
    throw ValidityError(os.str(), ErrorKind::kNoSolution);
  }
  if (!on_strong_branch(lambda)) {
    std::ostringstream os;
    os << "resonance at E = " << omega_target << " rad/ns needs Lambda = "
       << lambda << " > " << kStrongBranchLambda
       << ", outside the strong-coupling branch; raise the target energy";
    throw ValidityError(os.str());
  }
  return 2.0 * std::asin(sine);
}

double ratio_formula(const DeviceParams& p) {
  const double disc = 4.0 * p.alpha * p.alpha - 1.0;
  if (disc <= 0.0) throw DomainError("4 alpha^2 <= 1");
  return std::sqrt(2.0 * p.beta) * p.alpha / std::sqrt(disc) *
         std::pow(8.0 / p.EJ_over_EC, 0.25);
}

double shorthand_g(const DeviceParams& p, double phiC) {
  const StaticParams s = derive_statics(p);
  return -p.delta0 * s.zeta / std::sqrt(2.0) * std::cos(phiC / 2.0);
}

bool ValidityReport::required_checks_pass() const {
  return std::all_of(regimeFlags.begin(), regimeFlags.end(),
                     [](const RegimeFlag& f) { return f.passed || !f.required; });
}

ValidityReport validity_report(const DeviceParams& p, double phiC) {
  const StaticParams s = derive_statics(p);
  const Couplings c = couplings_at(p, phiC);
  const double lambda = lambda_of_phi(p, phiC);
  const double energy = energy_of_phi(p, phiC);

  ValidityReport r;
  r.ratioGOverGPrime = c.g / c.gPrime;
  r.energyOverG = std::abs(energy / c.g);
  r.tunnelingRate = s.omegaF * std::exp(-std::sqrt(p.EJ_over_EC));
  r.tunnelingErrorProb =
      std::min(1.0, std::pow(r.tunnelingRate / c.g, 2.0));
  r.thermalOccupation = std::exp(-p.vF / (p.temperature * p.L));

  r.regimeFlags.push_back({"strongBranch", lambda, kStrongBranchLambda,
                           on_strong_branch(lambda), true});
  r.regimeFlags.push_back({"energyOverG", r.energyOverG, kEnergyOverGThreshold,
                           r.energyOverG >= kEnergyOverGThreshold, true});
  r.regimeFlags.push_back({"gOverGPrime", r.ratioGOverGPrime, kMinGOverGPrime,
                           r.ratioGOverGPrime >= kMinGOverGPrime, false});
  r.regimeFlags.push_back({"tunnelingErrorProb", r.tunnelingErrorProb, 1e-3,
                           r.tunnelingErrorProb < 1e-3, false});
  r.regimeFlags.push_back({"thermalOccupation", r.thermalOccupation, 1e-2,
                           r.thermalOccupation < 1e-2, false});
  return r;
}

DerivedCouplings derive_couplings(const DeviceParams& p) {
  const StaticParams s = derive_statics(p);
  const Couplings c = couplings_at(p, p.phiC);
  DerivedCouplings d;
  d.theta = s.theta;
  d.zeta = s.zeta;
  d.omegaF = s.omegaF;
  d.lambdaPhi = lambda_of_phi(p, p.phiC);
  d.energyE = energy_of_phi(p, p.phiC);
  d.dEdPhi = dE_dphi(p, p.phiC);
  d.g = c.g;
  d.gPrime = c.gPrime;
  return d;
}

}  // namespace topoflux
