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

#include "topoflux/gates.hpp"

#include <cmath>
#include <numbers>

#include "topoflux/errors.hpp"

namespace topoflux {

namespace {

using Matrix4 = Eigen::Matrix4cd;
using Cplx = std::complex<double>;
constexpr Cplx kI(0.0, 1.0);

// Columns are the magic (Bell) basis in the computational ordering.
Matrix4 magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix4 q;
  q << 1, 0, 0, kI,
       0, kI, 1, 0,
       0, kI, -1, 0,
       1, 0, 0, -kI;
  return s * q;
}

CpCandidate evaluate(const GateMatrix& gate, const LocalInvariants& cz_inv) {
  CpCandidate c{gate, makhlin_invariants(gate), gate_fidelity(gate, cz()), false};
  c.locallyEquivalentToCz = locally_equivalent(c.invariants, cz_inv);
  return c;
}

}  // namespace

double unitarity_error(const Eigen::Matrix4cd& m) {
  return (m.adjoint() * m - Matrix4::Identity()).cwiseAbs().maxCoeff();
}

GateMatrix::GateMatrix(const Eigen::Matrix4cd& m) : m_(m) {
  if (unitarity_error(m_) >= 1e-10) {
    throw DomainError("gate matrix is not unitary");
  }
}

GateMatrix GateMatrix::identity() { return GateMatrix(Matrix4::Identity()); }

GateMatrix ideal_pulse_unitary(double area) {
  Matrix4 u = Matrix4::Identity();
  const double c = std::cos(area / 2.0);
  const Cplx is = kI * std::sin(area / 2.0);
  // indices: |down,1> = 1, |up,0> = 2
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = is;
  u(2, 1) = is;
  return GateMatrix(u);
}

GateMatrix rz(Qubit target, double angle_deg) {
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const Cplx lo = std::exp(-kI * (theta / 2.0));
  const Cplx hi = std::exp(kI * (theta / 2.0));
  Matrix4 u = Matrix4::Zero();
  for (int i = 0; i < 4; ++i) {
    const int bit = target == Qubit::kTopological ? i / 2 : i % 2;
    u(i, i) = bit == 0 ? lo : hi;
  }
  return GateMatrix(u);
}

GateMatrix cz() {
  Matrix4 u = Matrix4::Identity();
  u(3, 3) = -1.0;
  return GateMatrix(u);
}

GateMatrix swap_gate() {
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 2) = u(2, 1) = 1.0;
  return GateMatrix(u);
}

GateMatrix iswap() {
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 2) = u(2, 1) = kI;
  return GateMatrix(u);
}

GateMatrix canonical_sqrt_swap() {
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 1) = u(2, 2) = 0.5 * (1.0 + kI);
  u(1, 2) = u(2, 1) = 0.5 * (1.0 - kI);
  return GateMatrix(u);
}

GateMatrix sqrt_iswap() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 1) = u(2, 2) = s;
  u(1, 2) = u(2, 1) = kI * s;
  return GateMatrix(u);
}

GateMatrix synthesize_cp(ProductOrder order) {
  const GateMatrix s = ideal_pulse_unitary(-1.5 * std::numbers::pi);
  const GateMatrix factors[] = {rz(Qubit::kTopological, 90.0),
                                rz(Qubit::kFlux, -90.0), s,
                                rz(Qubit::kTopological, 180.0), s};
  Matrix4 u = Matrix4::Identity();
  if (order == ProductOrder::kRightmostFirst) {
    for (const auto& f : factors) u = u * f.matrix();
  } else {
    for (const auto& f : factors) u = f.matrix() * u;
  }
  return GateMatrix(u);
}

LocalInvariants makhlin_invariants(const GateMatrix& u) {
  const Matrix4 q = magic_basis();
  const Matrix4 ub = q.adjoint() * u.matrix() * q;
  const Matrix4 m = ub.transpose() * ub;
  const Cplx det = u.matrix().determinant();
  const Cplx tr = m.trace();
  const Cplx tr2 = (m * m).trace();
  LocalInvariants inv;
  inv.G1 = tr * tr / (16.0 * det);
  inv.G2 = ((tr * tr - tr2) / (4.0 * det)).real();
  return inv;
}

bool locally_equivalent(const LocalInvariants& a, const LocalInvariants& b,
                        double tol) {
  return std::abs(a.G1 - b.G1) < tol && std::abs(a.G2 - b.G2) < tol;
}

double gate_fidelity(const GateMatrix& u, const GateMatrix& v) {
  const Cplx overlap = (u.matrix().adjoint() * v.matrix()).trace();
  return std::norm(overlap) / 16.0;
}

CpVerification verify_cp() {
  CpVerification r;
  r.czInvariants = makhlin_invariants(cz());
  r.rightmostFirst = evaluate(synthesize_cp(ProductOrder::kRightmostFirst), r.czInvariants);
  r.leftmostFirst = evaluate(synthesize_cp(ProductOrder::kLeftmostFirst), r.czInvariants);
  r.pulsePrimitive = makhlin_invariants(ideal_pulse_unitary(-1.5 * std::numbers::pi));
  r.canonicalSqrtSwap = makhlin_invariants(canonical_sqrt_swap());
  r.sqrtIswap = makhlin_invariants(sqrt_iswap());
  r.primitiveEquivalentToSqrtSwap = locally_equivalent(r.pulsePrimitive, r.canonicalSqrtSwap);
  r.primitiveEquivalentToSqrtIswap = locally_equivalent(r.pulsePrimitive, r.sqrtIswap);
  return r;
}

}  // namespace topoflux
