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

// Dense operators and states on the composite topological (x) flux space.
//
// Basis order is topological-major: composite index i = s * N + n with
// s = 0 for |down>, s = 1 for |up>, and n = 0..N-1 the flux Fock level.
// For N = 2 the four states are |down,0>, |down,1>, |up,0>, |up,1>.

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace topoflux {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Subsystem { kTopological, kFlux };
enum class Spin { kDown = 0, kUp = 1 };

// Truncation of the flux oscillator plus an optional cap on the total
// excitation number s + n. A capped spec keeps the full 2N matrix layout but
// Hamiltonians are projected onto the allowed states.
class HilbertSpec {
 public:
  explicit HilbertSpec(int fock_levels = 2,
                       std::optional<int> max_excitations = std::nullopt);

  int fock_levels() const noexcept { return fock_levels_; }
  int dim() const noexcept { return 2 * fock_levels_; }
  std::optional<int> max_excitations() const noexcept {
    return max_excitations_;
  }

  int index(Spin s, int n) const;
  bool allowed(int index) const;
  // Diagonal projector onto the allowed states (identity when uncapped).
  CMatrix projector() const;

  bool operator==(const HilbertSpec&) const = default;

 private:
  int fock_levels_;
  std::optional<int> max_excitations_;
};

class Operator {
 public:
  Operator() = default;
  explicit Operator(CMatrix m);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  // max |A - A^dagger| over all entries.
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const {
    return hermiticity_error() < tol;
  }

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(Complex c, const Operator& a);

 private:
  CMatrix m_;
};

class StateVector {
 public:
  // Throws DomainError unless | ||psi||^2 - 1 | < 1e-10.
  explicit StateVector(CVector amplitudes);

  static StateVector basis(const HilbertSpec& spec, Spin s, int n);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const noexcept { return amps_; }

 private:
  CVector amps_;
};

struct DensityDiagnostics {
  double trace_error = 0.0;        // |tr rho - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;
  double purity = 0.0;             // tr rho^2
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates trace, Hermiticity and numerical positivity.
  explicit DensityMatrix(CMatrix m);

  static DensityMatrix pure(const StateVector& psi);
  // Wraps integrator output; callers check diagnostics() themselves.
  static DensityMatrix unchecked(CMatrix m);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  DensityDiagnostics diagnostics() const;

 private:
  CMatrix m_;
};

// (A (x) B)[iB*p + q, jB*r + s] = A[p, r] * B[q, s].
Operator kron(const Operator& a, const Operator& b);

// Truncated oscillator lowering operator, a[n-1, n] = sqrt(n).
Operator annihilation_op(int levels);

// op (x) I_N for the topological qubit, I_2 (x) op for the flux mode.
Operator embed(const Operator& op, Subsystem subsystem, const HilbertSpec& spec);

Complex matrix_element(const DensityMatrix& rho, const StateVector& bra,
                       const StateVector& ket);

// <psi|rho|psi>; phase insensitive. Throws if the imaginary part exceeds 1e-10.
double fidelity_pure(const StateVector& target, const DensityMatrix& rho);

// Single-qubit topological operators in the rotated {|down>, |up>} basis.
Operator sigma_plus_t();   // |up><down|
Operator sigma_minus_t();  // |down><up|
Operator sigma_x_t();
Operator sigma_z_t();      // |up><up| - |down><down|

// |0><0| - |1><1| on the flux mode, zero on levels n >= 2.
Operator sigma_z_f(int levels);

// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const CMatrix& m);

}  // namespace topoflux
