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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "topoflux/errors.hpp"

namespace topoflux {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

// Stretch of time on which the Hamiltonian is smooth and the integrator takes
// equal substeps. A trajectory sample is recorded at t1 when sample is set.
struct Interval {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t segment = 0;
  double segmentStart = 0.0;
  bool sample = false;
};

std::vector<Interval> build_intervals(const PulseSchedule& schedule) {
  const double total = schedule.total_duration();
  const double tol = 1e-12 * std::max(1.0, total);

  std::vector<double> starts;
  double acc = 0.0;
  for (const auto& seg : schedule.segments) {
    starts.push_back(acc);
    acc += seg.duration;
  }

  std::vector<std::pair<double, bool>> points;  // (time, is_sample)
  for (std::size_t i = 1; i < starts.size(); ++i) points.emplace_back(starts[i], false);
  for (long k = 1;; ++k) {
    const double t = static_cast<double>(k) * schedule.samplePeriod;
    if (t >= total - tol) break;
    points.emplace_back(t, true);
  }
  points.emplace_back(total, true);
  std::sort(points.begin(), points.end());

  std::vector<Interval> out;
  double prev = 0.0;
  for (const auto& [t, is_sample] : points) {
    if (t - prev <= tol) {
      if (is_sample && !out.empty()) out.back().sample = true;
      continue;
    }
    const double mid = 0.5 * (prev + t);
    std::size_t seg = 0;
    while (seg + 1 < starts.size() && starts[seg + 1] <= mid) ++seg;
    out.push_back({prev, t, seg, starts[seg], is_sample});
    prev = t;
  }
  return out;
}

using HamiltonianAt = std::function<void(double t, const Interval&, CMatrix& out)>;

void record(Trajectory& traj, double t, const CMatrix& rho,
            const HybridOperators& ops) {
  const int down1 = ops.spec.index(Spin::kDown, 1);
  const int up0 = ops.spec.index(Spin::kUp, 0);
  traj.times.push_back(t);
  traj.rho11.push_back(rho(down1, down1));
  traj.rho22.push_back(rho(up0, up0));
  traj.rho12.push_back(rho(down1, up0));
  traj.rho21.push_back(rho(up0, down1));
  const Complex tr = rho.trace();
  traj.trace.push_back(tr.real());
  traj.purity.push_back((rho * rho).trace().real());
  traj.minEigenvalue.push_back(min_hermitian_eigenvalue(rho));
  const double drift = std::abs(tr - Complex(1.0, 0.0));
  if (drift > 1e-6) {
    std::ostringstream os;
    os << "trace drifted by " << drift << " at t = " << t
       << " ns; reduce the time step";
    throw IntegrationError(os.str());
  }
}

Trajectory integrate(const DensityMatrix& rho0, const PulseSchedule& schedule,
                     const NoiseParams& noise, double dt,
                     const HybridOperators& ops, const HamiltonianAt& hamiltonian) {
  if (rho0.dim() != ops.spec.dim()) {
    throw DimensionError("initial state dimension does not match the Hilbert spec");
  }
  const auto intervals = build_intervals(schedule);

  Trajectory traj;
  CMatrix rho = rho0.matrix();
  record(traj, 0.0, rho, ops);

  const int d = ops.spec.dim();
  CMatrix h0(d, d), hmid(d, d), h1(d, d);
  CMatrix k1, k2, k3, k4;
  for (const Interval& iv : intervals) {
    const double span = iv.t1 - iv.t0;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      const double t = iv.t0 + static_cast<double>(s) * h;
      hamiltonian(t, iv, h0);
      hamiltonian(t + 0.5 * h, iv, hmid);
      hamiltonian(t + h, iv, h1);
      k1 = lindblad_rhs(rho, h0, noise, ops);
      k2 = lindblad_rhs(rho + (0.5 * h) * k1, hmid, noise, ops);
      k3 = lindblad_rhs(rho + (0.5 * h) * k2, hmid, noise, ops);
      k4 = lindblad_rhs(rho + h * k3, h1, noise, ops);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (iv.sample) record(traj, iv.t1, rho, ops);
  }
  traj.finalState = DensityMatrix::unchecked(std::move(rho));
  return traj;
}

double max_phase_frequency(const PulseSchedule& schedule) {
  double e = 0.0;
  for (const auto& seg : schedule.segments) e = std::max(e, std::abs(seg.phaseFreq));
  return e;
}

void check_step(double dt, double omega_max, const char* frame) {
  if (omega_max > 0.0 && dt > (kTwoPi / omega_max) / 100.0) {
    std::ostringstream os;
    os << "time step " << dt << " ns does not resolve the " << frame
       << " phase (period " << kTwoPi / omega_max << " ns needs dt <= "
       << (kTwoPi / omega_max) / 100.0 << ")";
    throw IntegrationError(os.str(), ErrorKind::kStepSize);
  }
}

double lab_frequency_bound(const PulseSchedule& schedule, double omegaF,
                           const HilbertSpec& spec) {
  return std::abs(omegaF) * (spec.fock_levels() - 1) + max_phase_frequency(schedule);
}

}  // namespace

double PulseSegment::envelope(double local_t) const {
  if (shape == PulseShape::kRectangular || rampTime <= 0.0) return 1.0;
  const double half_pi = 0.5 * std::numbers::pi;
  if (local_t < rampTime) {
    const double s = std::sin(half_pi * local_t / rampTime);
    return s * s;
  }
  if (local_t > duration - rampTime) {
    const double s = std::sin(half_pi * (duration - local_t) / rampTime);
    return s * s;
  }
  return 1.0;
}

double PulseSegment::area() const {
  // Each sin^2 edge integrates to rampTime / 2.
  if (shape == PulseShape::kRectangular) return g * duration;
  return g * (duration - rampTime);
}

void PulseSegment::validate() const {
  if (!(duration > 0.0)) throw DomainError("pulse segment duration must be positive");
  if (shape == PulseShape::kSinSquaredRamp) {
    if (rampTime < 0.0) throw DomainError("ramp time must be non-negative");
    if (rampTime > duration / 2.0 * (1.0 + 1e-12)) {
      throw DomainError("ramp time exceeds half the segment duration");
    }
  }
}

double PulseSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void PulseSchedule::validate() const {
  if (segments.empty()) throw DomainError("pulse schedule has no segments");
  for (const auto& s : segments) s.validate();
  if (!(samplePeriod > 0.0)) throw DomainError("sample period must be positive");
}

NoiseParams NoiseParams::from_rates(double eta1, double eta2) {
  NoiseParams n;
  n.enabled = true;
  n.Tf1 = eta1 > 0.0 ? 1.0 / (2.0 * eta1) : std::numeric_limits<double>::infinity();
  n.Tf2 = eta2 > 0.0 ? 1.0 / eta2 : std::numeric_limits<double>::infinity();
  return n;
}

void NoiseParams::validate() const {
  if (enabled && !(Tf1 > 0.0 && Tf2 > 0.0)) {
    throw DomainError("T_f1 and T_f2 must be positive when noise is enabled");
  }
}

HybridOperators::HybridOperators(const HilbertSpec& s) : spec(s) {
  const int n = spec.fock_levels();
  const Operator a_f = annihilation_op(n);
  a = embed(a_f, Subsystem::kFlux, spec).matrix();
  adag = a.adjoint();
  number = adag * a;
  szFlux = embed(sigma_z_f(n), Subsystem::kFlux, spec).matrix();
  splus = embed(sigma_plus_t(), Subsystem::kTopological, spec).matrix();
  sminus = embed(sigma_minus_t(), Subsystem::kTopological, spec).matrix();
  sxTopo = splus + sminus;
  szTopo = embed(sigma_z_t(), Subsystem::kTopological, spec).matrix();
  jaynesCummings = adag * sminus + a * splus;
  projector = spec.projector();
  dephasingSigns = szFlux.diagonal().real();
}

CMatrix interaction_hamiltonian(double t, double local_t, const PulseSegment& seg,
                                const HybridOperators& ops) {
  const double env = seg.envelope(local_t);
  const double g = env * seg.g;
  const double gp = env * seg.gPrime;
  const Complex phase = std::exp(kI * (seg.phaseFreq * t));
  CMatrix h = (-0.5 * g) * ops.jaynesCummings;
  if (gp != 0.0) {
    h += (-0.5 * gp) * (ops.szFlux * (phase * ops.splus + std::conj(phase) * ops.sminus));
  }
  if (ops.spec.max_excitations()) h = ops.projector * h * ops.projector;
  return h;
}

Operator build_interaction_hamiltonian(double t, const PulseSegment& seg,
                                       const HilbertSpec& spec, double segment_start) {
  const HybridOperators ops(spec);
  return Operator(interaction_hamiltonian(t, t - segment_start, seg, ops));
}

namespace {

CMatrix lab_hamiltonian(const DerivedCouplings& c, const HybridOperators& ops) {
  CMatrix h = c.omegaF * ops.number + (0.5 * c.energyE) * ops.szTopo -
              (0.5 * c.gPrime) * (ops.szFlux * ops.sxTopo) -
              (0.5 * c.g) * ((ops.a + ops.adag) * ops.sxTopo);
  if (ops.spec.max_excitations()) h = ops.projector * h * ops.projector;
  return h;
}

}  // namespace

Operator build_lab_hamiltonian(const DerivedCouplings& c, const HilbertSpec& spec) {
  return Operator(lab_hamiltonian(c, HybridOperators(spec)));
}

CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& hamiltonian,
                     const NoiseParams& noise, const HybridOperators& ops) {
  CMatrix out = -kI * (hamiltonian * rho - rho * hamiltonian);
  if (!noise.enabled) return out;
  const double gamma1 = noise.relaxation_rate();
  if (gamma1 > 0.0) {
    out += gamma1 * (ops.a * rho * ops.adag) -
           (0.5 * gamma1) * (ops.number * rho + rho * ops.number);
  }
  const double gamma2 = noise.dephasing_rate();
  if (gamma2 > 0.0) {
    // sz_f is diagonal: (sz rho sz)_ij = s_i s_j rho_ij. Levels above the
    // qubit have s = 0, so sz^2 is not the identity there.
    const auto& s = ops.dephasingSigns;
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        out(i, j) += gamma2 * (s(i) * s(j) - 0.5 * (s(i) * s(i) + s(j) * s(j))) * rho(i, j);
      }
    }
  }
  return out;
}

CMatrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                     const NoiseParams& noise, const HilbertSpec& spec) {
  if (rho.dim() != spec.dim() || hamiltonian.dim() != spec.dim()) {
    throw DimensionError("lindblad_rhs: operand dimensions do not match the spec");
  }
  return lindblad_rhs(rho.matrix(), hamiltonian.matrix(), noise, HybridOperators(spec));
}

double default_dt(const PulseSchedule& schedule) {
  double dt = schedule.total_duration() / 1e4;
  const double e = max_phase_frequency(schedule);
  if (e > 0.0) dt = std::min(dt, (kTwoPi / e) / 200.0);
  return dt;
}

double default_lab_dt(const PulseSchedule& schedule, double omegaF,
                      const HilbertSpec& spec) {
  double dt = schedule.total_duration() / 1e4;
  const double w = lab_frequency_bound(schedule, omegaF, spec);
  if (w > 0.0) dt = std::min(dt, (kTwoPi / w) / 200.0);
  return dt;
}

Trajectory evolve(const DensityMatrix& rho0, const PulseSchedule& schedule,
                  const NoiseParams& noise, double dt, const HilbertSpec& spec) {
  schedule.validate();
  noise.validate();
  if (dt <= 0.0) dt = default_dt(schedule);
  check_step(dt, max_phase_frequency(schedule), "interaction-picture");

  const HybridOperators ops(spec);
  return integrate(rho0, schedule, noise, dt, ops,
                   [&](double t, const Interval& iv, CMatrix& out) {
                     out = interaction_hamiltonian(
                         t, t - iv.segmentStart, schedule.segments[iv.segment], ops);
                   });
}

Trajectory evolve_lab(const DensityMatrix& rho0, const PulseSchedule& schedule,
                      double omegaF, const NoiseParams& noise, double dt,
                      const HilbertSpec& spec) {
  schedule.validate();
  noise.validate();
  if (dt <= 0.0) dt = default_lab_dt(schedule, omegaF, spec);
  check_step(dt, lab_frequency_bound(schedule, omegaF, spec), "lab-frame");

  const HybridOperators ops(spec);
  return integrate(rho0, schedule, noise, dt, ops,
                   [&](double t, const Interval& iv, CMatrix& out) {
                     const PulseSegment& seg = schedule.segments[iv.segment];
                     const double env = seg.envelope(t - iv.segmentStart);
                     DerivedCouplings c;
                     c.omegaF = omegaF;
                     c.energyE = seg.phaseFreq;
                     c.g = env * seg.g;
                     c.gPrime = env * seg.gPrime;
                     out = lab_hamiltonian(c, ops);
                   });
}

CMatrix propagate(const PulseSchedule& schedule, double dt, const HilbertSpec& spec) {
  schedule.validate();
  if (dt <= 0.0) dt = default_dt(schedule);
  check_step(dt, max_phase_frequency(schedule), "interaction-picture");

  const HybridOperators ops(spec);
  const int d = spec.dim();
  CMatrix u = CMatrix::Identity(d, d);
  auto h_at = [&](double t, const Interval& iv) {
    return interaction_hamiltonian(t, t - iv.segmentStart,
                                   schedule.segments[iv.segment], ops);
  };
  for (const Interval& iv : build_intervals(schedule)) {
    const double span = iv.t1 - iv.t0;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      const double t = iv.t0 + static_cast<double>(s) * h;
      const CMatrix h0 = h_at(t, iv);
      const CMatrix hm = h_at(t + 0.5 * h, iv);
      const CMatrix h1 = h_at(t + h, iv);
      const CMatrix k1 = -kI * (h0 * u);
      const CMatrix k2 = -kI * (hm * (u + (0.5 * h) * k1));
      const CMatrix k3 = -kI * (hm * (u + (0.5 * h) * k2));
      const CMatrix k4 = -kI * (h1 * (u + h * k3));
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return u;
}

double pulse_duration_for_area(double area, double g, PulseShape shape,
                               double rampTime) {
  if (area == 0.0 || g == 0.0 || std::signbit(area) != std::signbit(g)) {
    throw DomainError("pulse area and coupling must be non-zero with the same sign");
  }
  if (shape == PulseShape::kRectangular || rampTime <= 0.0) return area / g;

  PulseSegment seg;
  seg.g = g;
  seg.shape = shape;
  seg.rampTime = rampTime;
  seg.duration = 2.0 * rampTime;
  if (std::abs(seg.area()) > std::abs(area)) {
    throw DomainError("ramp time too long: the two ramps alone exceed the requested area");
  }
  double lo = 2.0 * rampTime;
  double hi = 2.0 * rampTime + std::abs(area / g);
  double mid = hi;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    seg.duration = mid;
    const double residual = std::abs(seg.area()) - std::abs(area);
    if (std::abs(residual) < 1e-12) break;
    (residual < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace topoflux
