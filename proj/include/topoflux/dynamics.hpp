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

// Lindblad evolution of the hybrid system under a piecewise pulse schedule.
//
// The interaction-picture Hamiltonian is
//
//   H_I(t) = -(g/2)(a' s- + a s+) - (g'/2) sz_f (s+ e^{iEt} + s- e^{-iEt})
//
// and the generator adds flux relaxation (rate 1/T_f1, jump operator a) and
// flux dephasing (rate 1/T_f2, jump operator sz_f):
//
//   drho/dt = -i[H, rho] + (1/2T_f1)(2 a rho a' - a'a rho - rho a'a)
//                        + (1/T_f2)(sz_f rho sz_f - rho)

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "topoflux/device.hpp"
#include "topoflux/hilbert.hpp"

namespace topoflux {

enum class PulseShape { kRectangular, kSinSquaredRamp };

// One piece of the control waveform. g and g' share the envelope since both
// follow dE/dphi at the controller phase; phaseFreq is E(phi_c).
struct PulseSegment {
  double duration = 0.0;   // ns
  double g = 0.0;          // rad/ns, plateau value
  double gPrime = 0.0;     // rad/ns, plateau value
  double phaseFreq = 0.0;  // rad/ns
  PulseShape shape = PulseShape::kRectangular;
  double rampTime = 0.0;   // ns, sin^2 rise and fall time

  // Envelope in [0, 1] at time local_t since the segment start.
  double envelope(double local_t) const;
  // Integral of g(t) over the segment.
  double area() const;
  void validate() const;
};

struct PulseSchedule {
  std::vector<PulseSegment> segments;
  double samplePeriod = 0.0;  // ns

  double total_duration() const;
  void validate() const;
};

struct NoiseParams {
  double Tf1 = std::numeric_limits<double>::infinity();  // ns
  double Tf2 = std::numeric_limits<double>::infinity();  // ns
  bool enabled = false;

  static NoiseParams off() { return {}; }
  // Infinite times switch the corresponding channel off.
  static NoiseParams from_rates(double eta1, double eta2);
  void validate() const;
  double relaxation_rate() const { return enabled ? 1.0 / Tf1 : 0.0; }
  double dephasing_rate() const { return enabled ? 1.0 / Tf2 : 0.0; }
};

// Samples follow the labelling rho11 = <down,1|rho|down,1>,
// rho22 = <up,0|rho|up,0>, rho12 = <down,1|rho|up,0>, rho21 = <up,0|rho|down,1>.
struct Trajectory {
  std::vector<double> times;
  std::vector<Complex> rho11, rho22, rho12, rho21;
  std::vector<double> trace, purity, minEigenvalue;
  DensityMatrix finalState;

  std::size_t size() const { return times.size(); }
};

// Subsystem operators lifted onto the composite space, built once per spec.
struct HybridOperators {
  explicit HybridOperators(const HilbertSpec& spec);

  HilbertSpec spec;
  CMatrix a, adag, number, szFlux, splus, sminus, sxTopo, szTopo;
  CMatrix jaynesCummings;  // a' s- + a s+
  CMatrix projector;       // onto the excitation-capped subspace
  Eigen::VectorXd dephasingSigns;  // diagonal of sz_f
};

Operator build_interaction_hamiltonian(double t, const PulseSegment& seg,
                                       const HilbertSpec& spec,
                                       double segment_start = 0.0);
CMatrix interaction_hamiltonian(double t, double local_t, const PulseSegment& seg,
                                const HybridOperators& ops);

// Static lab-frame Hamiltonian in the rotated {|down>, |up>} basis,
//   omega_f a'a + (E/2) sz_t - (g'/2) sz_f sx_t - (g/2)(a + a') sx_t,
// whose interaction picture after the rotating-wave approximation is H_I.
Operator build_lab_hamiltonian(const DerivedCouplings& c, const HilbertSpec& spec);

CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& hamiltonian,
                     const NoiseParams& noise, const HybridOperators& ops);
CMatrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                     const NoiseParams& noise, const HilbertSpec& spec);

// min(total / 1e4, (2pi / E_max) / 200).
double default_dt(const PulseSchedule& schedule);
double default_lab_dt(const PulseSchedule& schedule, double omegaF,
                      const HilbertSpec& spec);

// Fixed-step RK4 in the interaction picture. dt <= 0 selects default_dt.
Trajectory evolve(const DensityMatrix& rho0, const PulseSchedule& schedule,
                  const NoiseParams& noise, double dt, const HilbertSpec& spec);

// Same integrator driven by the lab-frame Hamiltonian with the schedule's
// envelope applied to g and g'. Used only to check the rotating-wave picture.
Trajectory evolve_lab(const DensityMatrix& rho0, const PulseSchedule& schedule,
                      double omegaF, const NoiseParams& noise, double dt,
                      const HilbertSpec& spec);

// Closed-system propagator U(T) of H_I over the schedule.
CMatrix propagate(const PulseSchedule& schedule, double dt,
                  const HilbertSpec& spec);

double pulse_duration_for_area(double area, double g, PulseShape shape,
                               double rampTime = 0.0);

}  // namespace topoflux
