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

// Two-qubit gates on the computational subspace, ordered
// {|down,0>, |down,1>, |up,0>, |up,1>} (topological qubit first).

#include <Eigen/Dense>

#include <complex>

namespace topoflux {

enum class Qubit { kTopological, kFlux };

class GateMatrix {
 public:
  // Throws DomainError unless max |U'U - I| < 1e-10.
  explicit GateMatrix(const Eigen::Matrix4cd& m);

  static GateMatrix identity();

  const Eigen::Matrix4cd& matrix() const noexcept { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }
  GateMatrix adjoint() const { return GateMatrix(m_.adjoint()); }

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
    return GateMatrix(a.m_ * b.m_);
  }

 private:
  Eigen::Matrix4cd m_;
};

double unitarity_error(const Eigen::Matrix4cd& m);

// Closed-form JC pulse of signed area A = int g dt (g' = 0, on resonance).
// On span{|up,0>, |down,1>}: cos(A/2) I + i sin(A/2) sigma_x; identity on
// |down,0> and |up,1>.
GateMatrix ideal_pulse_unitary(double area);

// diag(e^{-i theta/2}, e^{+i theta/2}) on the target qubit.
GateMatrix rz(Qubit target, double angle_deg);

GateMatrix cz();
GateMatrix swap_gate();
GateMatrix iswap();
GateMatrix canonical_sqrt_swap();
GateMatrix sqrt_iswap();

enum class ProductOrder {
  kRightmostFirst,  // standard: the rightmost factor acts first
  kLeftmostFirst,
};

// CP = Rz_t(90) Rz_f(-90) S Rz_t(180) S with S the -3pi/2 pulse.
GateMatrix synthesize_cp(ProductOrder order = ProductOrder::kRightmostFirst);

struct LocalInvariants {
  std::complex<double> G1;
  double G2 = 0.0;
};

LocalInvariants makhlin_invariants(const GateMatrix& u);
bool locally_equivalent(const LocalInvariants& a, const LocalInvariants& b,
                        double tol = 1e-9);

// |tr(U' V)|^2 / 16.
double gate_fidelity(const GateMatrix& u, const GateMatrix& v);

struct CpCandidate {
  GateMatrix gate = GateMatrix::identity();
  LocalInvariants invariants;
  double fidelityToCz = 0.0;
  bool locallyEquivalentToCz = false;
};

struct CpVerification {
  CpCandidate rightmostFirst;
  CpCandidate leftmostFirst;
  LocalInvariants czInvariants;
  LocalInvariants pulsePrimitive;   // the -3pi/2 pulse
  LocalInvariants canonicalSqrtSwap;
  LocalInvariants sqrtIswap;
  bool primitiveEquivalentToSqrtSwap = false;
  bool primitiveEquivalentToSqrtIswap = false;
};

CpVerification verify_cp();

}  // namespace topoflux
