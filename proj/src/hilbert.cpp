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

#include "topoflux/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topoflux/errors.hpp"

namespace topoflux {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return 2;
    case ErrorKind::kOutsideValidity:
    case ErrorKind::kNoSolution:
    case ErrorKind::kDomain:
      return 3;
    case ErrorKind::kStepSize:
    case ErrorKind::kIntegration:
      return 4;
    default:
      return 1;
  }
}

HilbertSpec::HilbertSpec(int fock_levels, std::optional<int> max_excitations)
    : fock_levels_(fock_levels), max_excitations_(max_excitations) {
  if (fock_levels < 2) {
    throw InvalidTruncationError("flux truncation needs at least 2 levels, got " +
                                 std::to_string(fock_levels));
  }
  if (max_excitations && *max_excitations < 1) {
    throw InvalidTruncationError("excitation cap must be >= 1");
  }
}

int HilbertSpec::index(Spin s, int n) const {
  if (n < 0 || n >= fock_levels_) {
    throw DimensionError("flux level " + std::to_string(n) +
                         " outside truncation " + std::to_string(fock_levels_));
  }
  return static_cast<int>(s) * fock_levels_ + n;
}

bool HilbertSpec::allowed(int index) const {
  if (!max_excitations_) return true;
  const int s = index / fock_levels_;
  const int n = index % fock_levels_;
  return s + n <= *max_excitations_;
}

CMatrix HilbertSpec::projector() const {
  CMatrix p = CMatrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (allowed(i)) p(i, i) = 1.0;
  }
  return p;
}

Operator::Operator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionError("operator must be square and non-empty");
  }
}

Operator Operator::identity(int dim) {
  return Operator(CMatrix::Identity(dim, dim));
}

Operator Operator::zero(int dim) { return Operator(CMatrix::Zero(dim, dim)); }

double Operator::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator product");
  return Operator(a.m_ * b.m_);
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator sum");
  return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator difference");
  return Operator(a.m_ - b.m_);
}

Operator operator*(Complex c, const Operator& a) { return Operator(c * a.m_); }

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("empty state vector");
  const double norm_error = std::abs(amps_.squaredNorm() - 1.0);
  if (norm_error >= 1e-10) {
    throw DomainError("state vector is not normalized (| |psi|^2 - 1 | = " +
                      std::to_string(norm_error) + ")");
  }
}

StateVector StateVector::basis(const HilbertSpec& spec, Spin s, int n) {
  CVector v = CVector::Zero(spec.dim());
  v(spec.index(s, n)) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  const DensityDiagnostics d = diagnostics();
  if (d.trace_error >= 1e-7) {
    throw DomainError("density matrix trace differs from 1 by " +
                      std::to_string(d.trace_error));
  }
  if (d.hermiticity_error >= 1e-9) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (d.min_eigenvalue <= -1e-8) {
    throw DomainError("density matrix has negative eigenvalue " +
                      std::to_string(d.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
  DensityMatrix rho;
  rho.m_ = std::move(m);
  return rho;
}

DensityDiagnostics DensityMatrix::diagnostics() const {
  DensityDiagnostics d;
  d.trace_error = std::abs(m_.trace() - Complex(1.0, 0.0));
  d.hermiticity_error = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  d.min_eigenvalue = min_hermitian_eigenvalue(m_);
  d.purity = (m_ * m_).trace().real();
  return d;
}

Operator kron(const Operator& a, const Operator& b) {
  const int da = a.dim();
  const int db = b.dim();
  CMatrix out(da * db, da * db);
  for (int p = 0; p < da; ++p) {
    for (int r = 0; r < da; ++r) {
      out.block(p * db, r * db, db, db) = a(p, r) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

Operator annihilation_op(int levels) {
  if (levels < 2) {
    throw InvalidTruncationError("annihilation operator needs N >= 2, got " +
                                 std::to_string(levels));
  }
  CMatrix a = CMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return Operator(std::move(a));
}

Operator embed(const Operator& op, Subsystem subsystem, const HilbertSpec& spec) {
  const int n = spec.fock_levels();
  if (subsystem == Subsystem::kTopological) {
    require_same_dim(op.dim(), 2, "embed(topological)");
    return kron(op, Operator::identity(n));
  }
  require_same_dim(op.dim(), n, "embed(flux)");
  return kron(Operator::identity(2), op);
}

Complex matrix_element(const DensityMatrix& rho, const StateVector& bra,
                       const StateVector& ket) {
  require_same_dim(rho.dim(), bra.dim(), "matrix_element bra");
  require_same_dim(rho.dim(), ket.dim(), "matrix_element ket");
  return bra.amplitudes().dot(rho.matrix() * ket.amplitudes());
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
  const Complex f = matrix_element(rho, target, target);
  if (std::abs(f.imag()) >= 1e-10) {
    throw DomainError("fidelity has imaginary part " + std::to_string(f.imag()));
  }
  return std::clamp(f.real(), 0.0, 1.0);
}

Operator sigma_plus_t() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_minus_t() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_x_t() { return sigma_plus_t() + sigma_minus_t(); }

Operator sigma_z_t() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_z_f(int levels) {
  if (levels < 2) {
    throw InvalidTruncationError("flux sigma_z needs N >= 2");
  }
  CMatrix m = CMatrix::Zero(levels, levels);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return Operator(std::move(m));
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace topoflux
