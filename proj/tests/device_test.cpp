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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "topoflux/errors.hpp"
#include "topoflux/units.hpp"

namespace topoflux {
namespace {

using units::angular_to_ghz;
using units::ghz_to_angular;
constexpr double kPi = std::numbers::pi;

double central_difference(const DeviceParams& p, double phi, double h = 1e-6) {
  return (energy_of_phi(p, phi + h) - energy_of_phi(p, phi - h)) / (2.0 * h);
}

DeviceParams standard_on_resonance() {
  DeviceParams p = standard_device();
  p.phiC = solve_resonant_phase(p, ghz_to_angular(50.0));
  return p;
}

DeviceParams large_ratio_on_resonance() {
  DeviceParams p = large_ratio_device();
  p.phiC = solve_resonant_phase(p, ghz_to_angular(50.0));
  return p;
}

TEST(DeriveStatics, StandardDevice) {
  const StaticParams s = derive_statics(standard_device());
  EXPECT_NEAR(s.theta, 0.052, 0.001);
  EXPECT_NEAR(s.zeta, 0.145, 0.001);
  EXPECT_NEAR(angular_to_ghz(s.omegaF), 50.0, 0.1);
}

TEST(DeriveStatics, LargeRatioDevice) {
  const StaticParams s = derive_statics(large_ratio_device());
  EXPECT_NEAR(s.theta, 0.086, 0.001);
  EXPECT_NEAR(s.zeta, 0.040, 0.001);
}

TEST(DeriveStatics, RejectsAlphaAtHalf) {
  DeviceParams p = standard_device();
  p.alpha = 0.5;
  EXPECT_THROW(derive_statics(p), DomainError);
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(Lambda, Examples) {
  const DeviceParams p = standard_device();
  EXPECT_EQ(lambda_of_phi(p, 0.0), 0.0);
  EXPECT_NEAR(lambda_of_phi(p, -1.73), -7.77, 0.01);
  EXPECT_NEAR(lambda_of_phi(p, -kPi), -10.21, 0.005);
}

TEST(Energy, StrongBranchAtOperatingPoint) {
  EXPECT_NEAR(angular_to_ghz(energy_of_phi(standard_device(), -1.73)), 50.0, 0.1);
}

TEST(Energy, StrongBranchEdgeIsInclusive) {
  DeviceParams p = standard_device();
  p.delta0 = 10.0 * p.vF / p.L;  // Delta0 L / vF = 10
  const double phi = -kPi / 3.0;  // Lambda = -5
  EXPECT_NEAR(energy_of_phi(p, phi), 1.9 * 5.5 * p.vF / p.L, 1e-9);
}

TEST(Energy, OffBranch) {
  DeviceParams p = standard_device();
  p.delta0 = 10.0 / std::sin(kPi / 4.0) * p.vF / p.L;  // Lambda(pi/2) = +10
  const double e = energy_of_phi(p, kPi / 2.0);
  EXPECT_NEAR(e, 2.0 * p.delta0 * std::sin(kPi / 4.0) * std::exp(-10.0), 1e-12);
  EXPECT_LT(std::abs(e), 1e-3 * p.delta0);
}

TEST(Energy, GapBetweenBranchesIsAnError) {
  const DeviceParams p = standard_device();
  EXPECT_THROW(energy_of_phi(p, 0.0), ValidityError);
  EXPECT_THROW(energy_of_phi(p, -0.5), ValidityError);  // Lambda ~ -2.5
}

TEST(Derivative, AnalyticAtOperatingPoint) {
  const DeviceParams p = standard_device();
  const double expected = -0.95 * p.delta0 * std::cos(-1.73 / 2.0);
  EXPECT_DOUBLE_EQ(dE_dphi(p, -1.73), expected);
  EXPECT_NEAR(angular_to_ghz(dE_dphi(p, -1.73)), -20.0, 0.1);
}

TEST(Derivative, MatchesFiniteDifferenceAcrossStrongBranch) {
  const DeviceParams p = standard_device();
  // Lambda <= -5 for phi in [-pi, -1.0235] on this wire; stay h away from the edge.
  for (double phi = -kPi + 1e-3; phi < -1.03; phi += 0.01) {
    const double analytic = dE_dphi(p, phi);
    const double numeric = central_difference(p, phi);
    EXPECT_LT(std::abs(analytic - numeric), 1e-6 * std::abs(analytic)) << "phi=" << phi;
  }
  const double at_two = dE_dphi(p, -2.0);
  EXPECT_LT(std::abs(at_two - central_difference(p, -2.0)), 1e-6 * std::abs(at_two));
}

TEST(Derivative, BranchGuard) {
  const DeviceParams p = standard_device();
  EXPECT_THROW(dE_dphi(p, kPi), ValidityError);  // Lambda = +10.21, off branch
  EXPECT_THROW(dE_dphi(p, -0.5), ValidityError);
  // Lambda(-pi) = -10.21 is still strong coupling; the slope vanishes there.
  EXPECT_NEAR(dE_dphi(p, -kPi), 0.0, 1e-12);
}

TEST(Couplings, StandardDevice) {
  const DeviceParams p = standard_on_resonance();
  const Couplings c = couplings_at(p, p.phiC);
  EXPECT_GE(angular_to_ghz(c.g), -2.1);
  EXPECT_LE(angular_to_ghz(c.g), -2.0);
  EXPECT_GE(angular_to_ghz(c.gPrime), -1.05);
  EXPECT_LE(angular_to_ghz(c.gPrime), -1.0);
}

TEST(Couplings, LargeRatioDevice) {
  const DeviceParams p = large_ratio_on_resonance();
  const Couplings c = couplings_at(p, p.phiC);
  EXPECT_NEAR(angular_to_ghz(c.g), -2.0, 0.02);
  EXPECT_NEAR(angular_to_ghz(c.gPrime), -6.0, 0.12);
  EXPECT_NEAR(c.gPrime / c.g, 3.0, 0.06);
}

TEST(Couplings, RatioMatchesClosedForm) {
  for (const DeviceParams& p : {standard_on_resonance(), large_ratio_on_resonance()}) {
    const Couplings c = couplings_at(p, p.phiC);
    const StaticParams s = derive_statics(p);
    const double from_statics = s.zeta / (std::sqrt(2.0) * s.theta);
    EXPECT_LT(std::abs(c.g / c.gPrime - from_statics), 1e-12 * from_statics);
    EXPECT_LT(std::abs(c.g / c.gPrime - ratio_formula(p)), 1e-12 * ratio_formula(p));
  }
}

TEST(Couplings, ShorthandDropsTheSlopeFactor) {
  const DeviceParams p = standard_on_resonance();
  const double g = couplings_at(p, p.phiC).g;
  const double shorthand = shorthand_g(p, p.phiC);
  EXPECT_NEAR(g / shorthand, 0.95, 1e-12);
  EXPECT_LE(std::abs(g - shorthand), 0.05 * std::abs(shorthand) + 1e-12);
}

TEST(Resonance, OperatingPoints) {
  EXPECT_NEAR(solve_resonant_phase(standard_device(), ghz_to_angular(50.0)), -1.73, 0.01);
  EXPECT_NEAR(solve_resonant_phase(large_ratio_device(), ghz_to_angular(50.0)), -0.646, 0.01);
  const DeviceParams p = standard_on_resonance();
  EXPECT_NEAR(lambda_of_phi(p, p.phiC), -7.75, 0.05);
}

TEST(Resonance, RoundTrip) {
  const DeviceParams p = standard_device();
  for (double ghz : {35.0, 50.0, 60.0, 64.0}) {
    const double w = ghz_to_angular(ghz);
    const double phi = solve_resonant_phase(p, w);
    EXPECT_GT(phi, -kPi);
    EXPECT_LT(phi, 0.0);
    EXPECT_LT(std::abs(energy_of_phi(p, phi) - w), 1e-10 * w);
  }
  // And the other way round, starting from strong-branch phases.
  for (double phi = -3.0; phi < -1.05; phi += 0.05) {
    EXPECT_NEAR(solve_resonant_phase(p, energy_of_phi(p, phi)), phi, 1e-10);
  }
}

TEST(Resonance, Failures) {
  const DeviceParams p = standard_device();
  try {
    solve_resonant_phase(p, ghz_to_angular(500.0));
    FAIL() << "expected no-solution error";
  } catch (const ValidityError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoSolution);
  }
  try {
    solve_resonant_phase(p, ghz_to_angular(10.0));
    FAIL() << "expected outside-validity error";
  } catch (const ValidityError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutsideValidity);
  }
}

TEST(RatioFormula, Values) {
  EXPECT_NEAR(ratio_formula(standard_device()), 2.0, 0.04);
  EXPECT_NEAR(ratio_formula(large_ratio_device()), 1.0 / 3.0, 0.01);
}

TEST(Validity, StandardDevice) {
  const DeviceParams p = standard_on_resonance();
  const ValidityReport r = validity_report(p, p.phiC);
  EXPECT_NEAR(angular_to_ghz(r.tunnelingRate) * 1e3, 6.5, 0.1);  // MHz
  EXPECT_NEAR(r.tunnelingErrorProb, 1e-5, 0.1e-5);
  EXPECT_NEAR(r.energyOverG, 24.3, 0.2);
  EXPECT_TRUE(r.required_checks_pass());
  for (const auto& f : r.regimeFlags) EXPECT_TRUE(f.passed) << f.name;
}

TEST(Validity, ThermalFactor) {
  DeviceParams p = standard_on_resonance();
  EXPECT_NEAR(p.temperature, 2.62, 0.01);
  EXPECT_NEAR(p.vF / p.L, 20.0, 1e-12);
  const ValidityReport r = validity_report(p, p.phiC);
  EXPECT_NEAR(r.thermalOccupation, std::exp(-20.0 / p.temperature), 1e-15);
  EXPECT_NEAR(r.thermalOccupation, 4.8e-4, 0.2e-4);
}

TEST(Validity, LargeRatioFlagsNonJcTerm) {
  const DeviceParams p = large_ratio_on_resonance();
  const ValidityReport r = validity_report(p, p.phiC);
  EXPECT_NEAR(r.ratioGOverGPrime, 1.0 / 3.0, 0.01);
  EXPECT_TRUE(r.required_checks_pass());
}

TEST(Derived, SmoothUnderOnePercentPerturbations) {
  const DeviceParams base = standard_on_resonance();
  const DerivedCouplings ref = derive_couplings(base);
  double DeviceParams::*fields[] = {&DeviceParams::alpha, &DeviceParams::beta,
                                    &DeviceParams::EJ,    &DeviceParams::EJ_over_EC,
                                    &DeviceParams::delta0, &DeviceParams::vF,
                                    &DeviceParams::L,     &DeviceParams::phiC};
  for (auto field : fields) {
    for (double scale : {0.99, 1.01}) {
      DeviceParams p = base;
      p.*field *= scale;
      const DerivedCouplings d = derive_couplings(p);
      EXPECT_LT(std::abs(d.g / ref.g - 1.0), 0.05);
      EXPECT_LT(std::abs(d.gPrime / ref.gPrime - 1.0), 0.05);
      EXPECT_LT(std::abs(d.energyE / ref.energyE - 1.0), 0.05);
    }
  }
}

}  // namespace
}  // namespace topoflux
