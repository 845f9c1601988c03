// Copyright 2026 The rmtlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Complex linear-algebra substrate: operators, states, spectral
// decomposition, discrete Fourier transforms and single-qubit purities.

#ifndef RMTLAB_QCORE_HPP
#define RMTLAB_QCORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "rmtlab/error.hpp"

namespace rmtlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unitarity tolerance per unit dimension for operators flagged unitary.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Looser bound accepted by the eigensolver before it refuses the input.
inline constexpr double kSpectralUnitaryTolerance = 1e-8;
inline constexpr double kNormTolerance = 1e-12;
/// Internal target for max|V diag(e^{i theta}) V^dagger - U|; the public
/// contract is 1e-9.
inline constexpr double kReconstructionTolerance = 1e-10;

/// max_ij |(A^dagger A - I)_ij|.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Plain gram = a.adjoint() * a;
  return (gram - Plain::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

/// max_ij |A - A^dagger|.
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Dense N x N complex operator. Indexing is (row, col).
class Operator {
 public:
  /// Wraps a square matrix without claiming unitarity.
  explicit Operator(Matrix m);

  /// Wraps a matrix and flags it unitary after checking
  /// max|U^dagger U - I| <= 1e-10 * N. Throws NotUnitary otherwise.
  static Operator unitary(Matrix m);
  static Operator identity(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  bool is_unitary() const noexcept { return unitary_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  Operator adjoint() const;

  friend bool operator==(const Operator& a, const Operator& b) {
    return a.unitary_ == b.unitary_ && a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Operator(Matrix m, bool unitary) : m_(std::move(m)), unitary_(unitary) {}

  Matrix m_;
  bool unitary_ = false;
};

Operator operator*(const Operator& a, const Operator& b);

/// Normalized pure state of n qubits (2^n amplitudes).
class StateVector {
 public:
  /// Throws InvalidArgument unless amps has length 2^n and |norm^2 - 1| <= 1e-12.
  StateVector(int n_qubits, Vector amps);

  /// Computational basis state |index>; bit (n - j) of index is qubit j.
  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Normalizes amps, whatever their norm (must be nonzero).
  static StateVector normalized(int n_qubits, Vector amps);

  int n_qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const Vector& amplitudes() const noexcept { return amps_; }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.n_ == b.n_ && a.amps_ == b.amps_;
  }

 private:
  struct Unchecked {};
  StateVector(int n_qubits, Vector amps, Unchecked) : n_(n_qubits), amps_(std::move(amps)) {}
  friend StateVector apply(const Operator&, const StateVector&);
  friend StateVector iterate(const Operator&, const StateVector&, int);

  int n_;
  Vector amps_;
};

/// Eigenphases in [0, 2pi), ascending, with matching eigenvector columns.
struct SpectralData {
  std::vector<double> phases;
  Matrix vectors;
};

StateVector apply(const Operator& u, const StateVector& psi);

/// U^t psi by t successive applications.
StateVector iterate(const Operator& u, const StateVector& psi, int t);

/// U^t by binary powering.
Operator matrix_power(const Operator& u, int t);

/// Orthonormal eigenbasis of a unitary. Solved through a Hermitian (Cayley)
/// transform; falls back to complex Schur, whose triangular factor is
/// diagonal up to round-off for a normal matrix.
SpectralData spectral_decomposition(const Operator& u);

/// F[k][j] = N^{-1/2} exp(-2 pi i (k+s)(j+s)/N), s = 1/2 when half_shift.
Operator dft(Eigen::Index n, bool half_shift);

/// Tr[rho_j^2] for qubit j (1-based, qubit 1 = most significant bit) of an
/// n-qubit amplitude vector. Works on any vector expression, e.g. a matrix
/// column, without copying.
template <typename Derived>
double qubit_purity(const Eigen::MatrixBase<Derived>& amps, int n_qubits, int j) {
  if (j < 1 || j > n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit index out of range");
  const Eigen::Index stride = Eigen::Index{1} << (n_qubits - j);
  const Eigen::Index size = amps.size();
  double r00 = 0.0;
  double r11 = 0.0;
  Complex r01 = 0.0;
  // Pairs (b, b + stride) where b has the target bit clear.
  for (Eigen::Index block = 0; block < size; block += 2 * stride) {
    for (Eigen::Index b = block; b < block + stride; ++b) {
      const Complex a0 = amps(b);
      const Complex a1 = amps(b + stride);
      r00 += std::norm(a0);
      r11 += std::norm(a1);
      r01 += a0 * std::conj(a1);
    }
  }
  return r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
}

double qubit_purity(const StateVector& psi, int j);

/// log2 of dim when dim is a power of two, otherwise -1.
int log2_exact(std::uint64_t dim) noexcept;

}  // namespace rmtlab

#endif  // RMTLAB_QCORE_HPP
