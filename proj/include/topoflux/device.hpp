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

// Circuit and wire parameters to couplings.
//
// The Majorana pair across the STIS wire hybridizes with energy E(phi), where
// phi is the phase of the shared island. Two asymptotic branches are known:
//
//   strong:  E = -1.9 (Lambda - 0.5) vF / L          for Lambda <= -5
//   off:     E = 2 Delta0 sin(phi/2) exp(-Lambda)     for Lambda >= +5
//
// with Lambda = (Delta0 L / vF) sin(phi/2). Between the two there is no
// formula and every evaluation there raises ValidityError.

#include <string>
#include <vector>

namespace topoflux {

struct DeviceParams {
  double alpha = 0.0;        // E_J3 / E_J, in (0.5, 1)
  double beta = 0.0;         // E_J4 / E_J, >= 1
  double EJ = 0.0;           // rad/ns
  double EJ_over_EC = 0.0;
  double delta0 = 0.0;       // proximity gap, rad/ns
  double vF = 0.0;           // um/ns
  double L = 0.0;            // um
  double phiC = 0.0;         // controller phase setpoint, rad
  double Tf1 = 0.0;          // ns
  double Tf2 = 0.0;          // ns
  double temperature = 0.0;  // k_B T / hbar, rad/ns

  double EC() const { return EJ / EJ_over_EC; }
  // Throws DomainError when an invariant is violated.
  void validate() const;
};

// alpha=0.8, beta=15, E_J/E_C=80, E_J/2pi=158 GHz, Delta0/2pi=32.5 GHz,
// vF=1e5 m/s, L=5 um, T_f1=900 ns, T_f2=20 ns, 20 mK. phiC is left at 0.
DeviceParams standard_device();
// alpha=0.97, beta=10, E_J/E_C=30000, E_J/2pi=3.1 THz, Delta0/2pi=78 GHz,
// remaining wire and noise values as standard_device().
DeviceParams large_ratio_device();

struct StaticParams {
  double theta = 0.0;   // junction-4 phase difference
  double zeta = 0.0;    // flux zero-point fluctuation
  double omegaF = 0.0;  // plasma frequency sqrt(8 E_J E_C)
};

struct Couplings {
  double g = 0.0;
  double gPrime = 0.0;
};

struct DerivedCouplings {
  double theta = 0.0;
  double zeta = 0.0;
  double omegaF = 0.0;
  double lambdaPhi = 0.0;
  double energyE = 0.0;
  double dEdPhi = 0.0;
  double g = 0.0;
  double gPrime = 0.0;
};

struct RegimeFlag {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  // Required flags abort a scenario when they fail; others are advisory.
  bool required = false;
};

struct ValidityReport {
  double ratioGOverGPrime = 0.0;
  double energyOverG = 0.0;
  double tunnelingRate = 0.0;       // rad/ns, order-of-magnitude estimate
  double tunnelingErrorProb = 0.0;  // (r/g)^2
  double thermalOccupation = 0.0;   // exp(-vF / (k_B T L))
  std::vector<RegimeFlag> regimeFlags;

  bool required_checks_pass() const;
};

inline constexpr double kStrongBranchLambda = -5.0;
inline constexpr double kOffBranchLambda = 5.0;
inline constexpr double kEnergyOverGThreshold = 10.0;
inline constexpr double kMinGOverGPrime = 1.0 / 3.0;

StaticParams derive_statics(const DeviceParams& p);
double lambda_of_phi(const DeviceParams& p, double phi);
double energy_of_phi(const DeviceParams& p, double phi);
// Derivative of the strong-branch law, -0.95 Delta0 cos(phi/2).
double dE_dphi(const DeviceParams& p, double phi);
Couplings couplings_at(const DeviceParams& p, double phiC);
// Strong-branch phase in (-pi, 0) with energy_of_phi(phi) == omega_target.
double solve_resonant_phase(const DeviceParams& p, double omega_target);
double ratio_formula(const DeviceParams& p);
// Approximation g ~ -Delta0 (zeta/sqrt2) cos(phi/2); it drops the 0.95 factor
// of the strong-branch derivative and is kept only as a cross-check.
double shorthand_g(const DeviceParams& p, double phiC);
ValidityReport validity_report(const DeviceParams& p, double phiC);
DerivedCouplings derive_couplings(const DeviceParams& p);

}  // namespace topoflux
