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

#include "topoflux/dynamics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "topoflux/errors.hpp"
#include "topoflux/units.hpp"

namespace topoflux {
namespace {

using testing::max_abs;
using units::ghz_to_angular;
constexpr double kPi = std::numbers::pi;

const double kG = ghz_to_angular(-2.0596);
const double kGPrime = ghz_to_angular(-1.0440);
const double kE = ghz_to_angular(50.0);

PulseSchedule single_pulse(double area, double g, double gp, double e,
                           double sample_fraction = 1.0 / 100.0) {
  PulseSegment seg;
  seg.duration = pulse_duration_for_area(area, g, PulseShape::kRectangular);
  seg.g = g;
  seg.gPrime = gp;
  seg.phaseFreq = e;
  return {{seg}, seg.duration * sample_fraction};
}

DensityMatrix start_up0(const HilbertSpec& spec) {
  return DensityMatrix::pure(StateVector::basis(spec, Spin::kUp, 0));
}

NoiseParams operating_noise() {
  NoiseParams n;
  n.enabled = true;
  n.Tf1 = 900.0;
  n.Tf2 = 20.0;
  return n;
}

TEST(InteractionHamiltonian, JcBlockIsSigmaX) {
  const HilbertSpec spec(2);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.g = kG;
  const CMatrix h = build_interaction_hamiltonian(0.3, seg, spec).matrix();
  const int up0 = spec.index(Spin::kUp, 0);
  const int down1 = spec.index(Spin::kDown, 1);
  EXPECT_NEAR(h(up0, down1).real(), -kG / 2.0, 1e-15);
  EXPECT_NEAR(h(down1, up0).real(), -kG / 2.0, 1e-15);
  EXPECT_GT(h(up0, down1).real(), 0.0);  // |g|/2 for negative g
  EXPECT_NEAR(h(up0, up0).real(), 0.0, 1e-15);
  EXPECT_NEAR(h(down1, down1).real(), 0.0, 1e-15);
  // Dark |down,0> and the n=1 partner |up,1> stay uncoupled without g'.
  EXPECT_NEAR(max_abs(h.row(spec.index(Spin::kDown, 0))), 0.0, 1e-15);
}

TEST(InteractionHamiltonian, ZeroCouplingsGiveZero) {
  const HilbertSpec spec(3);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.phaseFreq = kE;
  EXPECT_EQ(max_abs(build_interaction_hamiltonian(0.7, seg, spec).matrix()), 0.0);
}

TEST(InteractionHamiltonian, HermitianForRandomParameters) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int n : {2, 3, 6}) {
    const HilbertSpec spec(n);
    for (int trial = 0; trial < 50; ++trial) {
      PulseSegment seg;
      seg.duration = 1.0;
      seg.g = u(rng);
      seg.gPrime = u(rng);
      seg.phaseFreq = 10.0 * u(rng);
      const Operator h = build_interaction_hamiltonian(std::abs(u(rng)), seg, spec);
      EXPECT_LT(h.hermiticity_error(), 1e-14);
    }
  }
}

TEST(InteractionHamiltonian, NonJcTermPhase) {
  const HilbertSpec spec(2);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.gPrime = kGPrime;
  seg.phaseFreq = kE;
  const double t = 0.0123;
  const CMatrix h = build_interaction_hamiltonian(t, seg, spec).matrix();
  // <up,0| H |down,0> = -(g'/2) * (+1) * e^{iEt}; <up,1| H |down,1> has sz_f = -1.
  const Complex expected = -0.5 * kGPrime * std::exp(Complex(0, kE * t));
  EXPECT_LT(std::abs(h(spec.index(Spin::kUp, 0), spec.index(Spin::kDown, 0)) - expected), 1e-14);
  EXPECT_LT(std::abs(h(spec.index(Spin::kUp, 1), spec.index(Spin::kDown, 1)) + expected), 1e-14);
}

TEST(InteractionHamiltonian, ExcitationCapProjectsOutDoubleExcitation) {
  const HilbertSpec capped(2, 1);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.g = kG;
  seg.gPrime = kGPrime;
  seg.phaseFreq = kE;
  const CMatrix h = build_interaction_hamiltonian(0.01, seg, capped).matrix();
  const int up1 = capped.index(Spin::kUp, 1);
  EXPECT_EQ(max_abs(h.row(up1)), 0.0);
  EXPECT_EQ(max_abs(h.col(up1)), 0.0);
  EXPECT_GT(std::abs(h(capped.index(Spin::kUp, 0), capped.index(Spin::kDown, 0))), 0.0);
}

TEST(LabHamiltonian, DecoupledSpectrum) {
  for (int n : {2, 4}) {
    const HilbertSpec spec(n);
    DerivedCouplings c;
    c.omegaF = ghz_to_angular(49.96);
    c.energyE = kE;
    const Operator h = build_lab_hamiltonian(c, spec);
    EXPECT_LT(h.hermiticity_error(), 1e-14);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    std::vector<double> expected;
    for (int k = 0; k < n; ++k) {
      expected.push_back(k * c.omegaF - c.energyE / 2.0);
      expected.push_back(k * c.omegaF + c.energyE / 2.0);
    }
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < spec.dim(); ++i) {
      EXPECT_NEAR(solver.eigenvalues()(i), expected[static_cast<std::size_t>(i)], 1e-10);
    }
  }
}

TEST(LabHamiltonian, HermitianWithCouplings) {
  DerivedCouplings c;
  c.omegaF = kE;
  c.energyE = kE;
  c.g = kG;
  c.gPrime = kGPrime;
  EXPECT_LT(build_lab_hamiltonian(c, HilbertSpec(3)).hermiticity_error(), 1e-14);
}

TEST(LindbladRhs, DarkStateIsStationary) {
  const HilbertSpec spec(2);
  PulseSegment seg;
  seg.duration = 1.0;
  seg.g = kG;
  seg.phaseFreq = kE;
  const DensityMatrix dark = DensityMatrix::pure(StateVector::basis(spec, Spin::kDown, 0));
  const CMatrix d = lindblad_rhs(dark, build_interaction_hamiltonian(0.2, seg, spec),
                                 NoiseParams::off(), spec);
  EXPECT_EQ(max_abs(d), 0.0);
  const CMatrix noisy = lindblad_rhs(dark, build_interaction_hamiltonian(0.2, seg, spec),
                                     operating_noise(), spec);
  EXPECT_EQ(max_abs(noisy), 0.0);
}

TEST(LindbladRhs, RelaxationOfExcitedFlux) {
  const HilbertSpec spec(2);
  const NoiseParams noise = operating_noise();
  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis(spec, Spin::kDown, 1));
  const CMatrix d = lindblad_rhs(rho, Operator::zero(spec.dim()), noise, spec);
  const int down1 = spec.index(Spin::kDown, 1);
  const int down0 = spec.index(Spin::kDown, 0);
  EXPECT_NEAR(d(down1, down1).real(), -1.0 / noise.Tf1, 1e-15);
  EXPECT_NEAR(d(down0, down0).real(), 1.0 / noise.Tf1, 1e-15);
}

TEST(LindbladRhs, CoherenceDecayRate) {
  const HilbertSpec spec(2);
  const NoiseParams noise = operating_noise();
  const StateVector up0 = StateVector::basis(spec, Spin::kUp, 0);
  const StateVector down1 = StateVector::basis(spec, Spin::kDown, 1);
  const DensityMatrix rho =
      DensityMatrix::pure(StateVector((up0.amplitudes() + down1.amplitudes()) / std::sqrt(2.0)));
  const CMatrix d = lindblad_rhs(rho, Operator::zero(spec.dim()), noise, spec);
  const int i = spec.index(Spin::kUp, 0);
  const int j = spec.index(Spin::kDown, 1);
  const double rate = 1.0 / (2.0 * noise.Tf1) + 2.0 / noise.Tf2;
  EXPECT_NEAR(d(i, j).real(), -rate * rho(i, j).real(), 1e-15);
  EXPECT_NEAR(d(j, i).real(), -rate * rho(j, i).real(), 1e-15);
}

TEST(LindbladRhs, TracelessForRandomStates) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const HilbertSpec spec(n);
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix x = testing::random_matrix(spec.dim(), rng);
      CMatrix rho = x * x.adjoint();
      rho /= rho.trace();
      PulseSegment seg;
      seg.duration = 1.0;
      seg.g = kG;
      seg.gPrime = kGPrime;
      seg.phaseFreq = kE;
      const CMatrix d = lindblad_rhs(DensityMatrix(rho), build_interaction_hamiltonian(0.1, seg, spec),
                                     operating_noise(), spec);
      EXPECT_LT(std::abs(d.trace()), 1e-12);
    }
  }
}

TEST(PulseDuration, Rectangular) {
  EXPECT_NEAR(pulse_duration_for_area(-kPi, kG, PulseShape::kRectangular), 0.2428, 1e-4);
  EXPECT_NEAR(pulse_duration_for_area(-kPi / 2, kG, PulseShape::kRectangular), 0.1214, 1e-4);
  EXPECT_DOUBLE_EQ(pulse_duration_for_area(-kPi, kG, PulseShape::kRectangular), kPi / std::abs(kG));
}

TEST(PulseDuration, SinSquaredRampAddsRampTime) {
  for (double ramp : {0.01, 0.05, 0.1}) {
    const double t = pulse_duration_for_area(-kPi, kG, PulseShape::kSinSquaredRamp, ramp);
    EXPECT_NEAR(t, kPi / std::abs(kG) + ramp, 1e-11);
    PulseSegment seg;
    seg.duration = t;
    seg.g = kG;
    seg.shape = PulseShape::kSinSquaredRamp;
    seg.rampTime = ramp;
    EXPECT_LT(std::abs(seg.area() + kPi), 1e-12);
  }
}

TEST(PulseDuration, Errors) {
  EXPECT_THROW(pulse_duration_for_area(kPi, kG, PulseShape::kRectangular), DomainError);
  EXPECT_THROW(pulse_duration_for_area(-kPi, kG, PulseShape::kSinSquaredRamp, 1.0), DomainError);
}

TEST(PulseSegment, RampEnvelopeIntegratesToArea) {
  PulseSegment seg;
  seg.duration = 0.4;
  seg.g = kG;
  seg.shape = PulseShape::kSinSquaredRamp;
  seg.rampTime = 0.1;
  // Simpson quadrature of the envelope.
  const int n = 2000;
  const double h = seg.duration / n;
  double sum = seg.envelope(0.0) + seg.envelope(seg.duration);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * seg.envelope(i * h);
  EXPECT_NEAR(kG * sum * h / 3.0, seg.area(), 1e-9);
  EXPECT_EQ(seg.envelope(0.0), 0.0);
  EXPECT_EQ(seg.envelope(0.2), 1.0);
}

TEST(Evolve, RabiOracle) {
  const HilbertSpec spec(2);
  const PulseSchedule schedule = single_pulse(-kPi, kG, 0.0, kE);
  const Trajectory traj = evolve(start_up0(spec), schedule, NoiseParams::off(), 0.0, spec);
  ASSERT_EQ(traj.size(), 101u);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double c = std::cos(std::abs(kG) * traj.times[i] / 2.0);
    worst = std::max(worst, std::abs(traj.rho22[i].real() - c * c));
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_NEAR(traj.rho11.back().real(), 1.0, 1e-9);
}

TEST(Evolve, NoiseFreeEvolutionIsPure) {
  const HilbertSpec spec(3);
  const Trajectory traj =
      evolve(start_up0(spec), single_pulse(-kPi, kG, kGPrime, kE), NoiseParams::off(), 0.0, spec);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_NEAR(traj.purity[i], 1.0, 1e-7);
    EXPECT_NEAR(traj.trace[i], 1.0, 1e-7);
  }
}

TEST(Evolve, NoisyInvariantsHoldAtEverySample) {
  const HilbertSpec spec(2);
  const Trajectory traj =
      evolve(start_up0(spec), single_pulse(-kPi, kG, kGPrime, kE), operating_noise(), 0.0, spec);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_LT(std::abs(traj.trace[i] - 1.0), 1e-7);
    EXPECT_GT(traj.minEigenvalue[i], -1e-8);
    EXPECT_LT(std::abs(traj.rho12[i] - std::conj(traj.rho21[i])), 1e-9);
  }
  EXPECT_LT(traj.finalState.diagnostics().hermiticity_error, 1e-9);
}

TEST(Evolve, DarkStateStaysPutForTenNanoseconds) {
  const HilbertSpec spec(2);
  PulseSegment seg;
  seg.duration = 10.0;
  seg.g = kG;
  seg.phaseFreq = kE;
  const DensityMatrix dark = DensityMatrix::pure(StateVector::basis(spec, Spin::kDown, 0));
  const Trajectory traj = evolve(dark, {{seg}, 1.0}, operating_noise(), 0.0, spec);
  EXPECT_LT(max_abs(traj.finalState.matrix() - dark.matrix()), 1e-9);
}

TEST(Evolve, StepHalvingConverges) {
  const HilbertSpec spec(2);
  const PulseSchedule schedule = single_pulse(-kPi, kG, kGPrime, kE);
  const StateVector target(Complex(0, -1) * StateVector::basis(spec, Spin::kDown, 1).amplitudes());
  const double dt = default_dt(schedule);
  const double f1 = fidelity_pure(target, evolve(start_up0(spec), schedule, operating_noise(), dt, spec).finalState);
  const double f2 = fidelity_pure(target, evolve(start_up0(spec), schedule, operating_noise(), dt / 2, spec).finalState);
  EXPECT_LT(std::abs(f1 - f2), 1e-7);
}

TEST(Evolve, RejectsCoarseStep) {
  const HilbertSpec spec(2);
  const PulseSchedule schedule = single_pulse(-kPi, kG, kGPrime, kE);
  try {
    evolve(start_up0(spec), schedule, NoiseParams::off(), 1e-3, spec);
    FAIL() << "expected step-size error";
  } catch (const IntegrationError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStepSize);
  }
}

TEST(Evolve, SegmentBoundariesAreExact) {
  const HilbertSpec spec(2);
  const PulseSchedule whole = single_pulse(-kPi, kG, 0.0, 0.0);
  PulseSchedule halves = single_pulse(-kPi / 2, kG, 0.0, 0.0);
  halves.segments.push_back(halves.segments.front());
  halves.samplePeriod = 0.013;  // deliberately not commensurate
  const Trajectory a = evolve(start_up0(spec), whole, NoiseParams::off(), 1e-4, spec);
  const Trajectory b = evolve(start_up0(spec), halves, NoiseParams::off(), 1e-4, spec);
  EXPECT_NEAR(b.times.back(), a.times.back(), 1e-15);
  EXPECT_LT(max_abs(a.finalState.matrix() - b.finalState.matrix()), 1e-10);
}

TEST(Evolve, RampedPulseTransfersCompletely) {
  const HilbertSpec spec(2);
  PulseSegment seg;
  seg.g = kG;
  seg.phaseFreq = kE;
  seg.shape = PulseShape::kSinSquaredRamp;
  seg.rampTime = 0.05;
  seg.duration = pulse_duration_for_area(-kPi, kG, seg.shape, seg.rampTime);
  const Trajectory traj = evolve(start_up0(spec), {{seg}, seg.duration / 50}, NoiseParams::off(), 0.0, spec);
  EXPECT_NEAR(traj.rho11.back().real(), 1.0, 1e-8);
}

TEST(Evolve, CappedSpaceNeverPopulatesDoubleExcitation) {
  const HilbertSpec capped(2, 1);
  const Trajectory traj = evolve(start_up0(capped), single_pulse(-kPi, kG, 3.0 * kG, kE),
                                 operating_noise(), 0.0, capped);
  const int up1 = capped.index(Spin::kUp, 1);
  EXPECT_EQ(std::abs(traj.finalState(up1, up1)), 0.0);
}

TEST(Evolve, CappedTruncationIsInert) {
  const PulseSchedule schedule = single_pulse(-kPi, kG, kGPrime, kE);
  const HilbertSpec two(2, 1);
  const HilbertSpec six(6, 1);
  const Trajectory a = evolve(start_up0(two), schedule, operating_noise(), 0.0, two);
  const Trajectory b = evolve(start_up0(six), schedule, operating_noise(), 0.0, six);
  EXPECT_NEAR(a.rho11.back().real(), b.rho11.back().real(), 1e-12);
}

TEST(Evolve, LabFrameAgreesWithRotatingWavePicture) {
  const HilbertSpec spec(3);
  PulseSchedule schedule = single_pulse(-kPi, kG, kGPrime, kE, 1.0 / 50.0);
  const Trajectory rwa = evolve(start_up0(spec), schedule, NoiseParams::off(), 0.0, spec);
  const Trajectory lab = evolve_lab(start_up0(spec), schedule, kE, NoiseParams::off(), 0.0, spec);
  ASSERT_EQ(rwa.size(), lab.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < rwa.size(); ++i) {
    worst = std::max(worst, std::abs(rwa.rho11[i].real() - lab.rho11[i].real()));
    worst = std::max(worst, std::abs(rwa.rho22[i].real() - lab.rho22[i].real()));
  }
  EXPECT_LT(worst, 0.05);
}

TEST(Propagate, MatchesDensityMatrixEvolution) {
  const HilbertSpec spec(2);
  const PulseSchedule schedule = single_pulse(-kPi / 2, kG, kGPrime, kE);
  const CMatrix u = propagate(schedule, 0.0, spec);
  EXPECT_LT(max_abs(u.adjoint() * u - CMatrix::Identity(4, 4)), 1e-10);
  const CVector psi = u * StateVector::basis(spec, Spin::kUp, 0).amplitudes();
  const Trajectory traj = evolve(start_up0(spec), schedule, NoiseParams::off(), 0.0, spec);
  EXPECT_LT(max_abs(psi * psi.adjoint() - traj.finalState.matrix()), 1e-9);
}

}  // namespace
}  // namespace topoflux
