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

#include "rmtlab/qcore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

namespace rmtlab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadIndexOrder: return "BadIndexOrder";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TooFewQubits: return "TooFewQubits";
    case ErrorCode::SingleQubit: return "SingleQubit";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::MissingReferenceKind: return "MissingReferenceKind";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Format: return "Format";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::NotUnitary || code == ErrorCode::ConvergenceFailure;
}

int log2_exact(std::uint64_t dim) noexcept {
  if (dim == 0 || (dim & (dim - 1)) != 0) return -1;
  int n = 0;
  while ((std::uint64_t{1} << n) != dim) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operator must be square with dim >= 1");
  }
}

Operator Operator::unitary(Matrix m) {
  Operator op(std::move(m));
  const double residual = unitarity_residual(op.m_);
  const double bound = kUnitaryTolerance * static_cast<double>(op.dim());
  if (!(residual <= bound)) {
    throw Error(ErrorCode::NotUnitary, "unitarity residual " + std::to_string(residual) +
                                           " exceeds " + std::to_string(bound));
  }
  op.unitary_ = true;
  return op;
}

Operator Operator::identity(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "dim must be >= 1");
  return Operator(Matrix::Identity(dim, dim), true);
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), unitary_); }

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operator product");
  Matrix prod = a.matrix() * b.matrix();
  if (a.is_unitary() && b.is_unitary()) return Operator::unitary(std::move(prod));
  return Operator(std::move(prod));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits, Vector amps) : n_(n_qubits), amps_(std::move(amps)) {
  if (n_ < 1 || n_ > 30) throw Error(ErrorCode::InvalidArgument, "n_qubits must be in [1, 30]");
  if (amps_.size() != (Eigen::Index{1} << n_)) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count must be 2^n_qubits");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::InvalidArgument, "state is not normalized");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw Error(ErrorCode::InvalidArgument, "n_qubits must be in [1, 30]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  }
  Vector amps = Vector::Zero(dim);
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::normalized(int n_qubits, Vector amps) {
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize zero vector");
  amps /= norm;
  return StateVector(n_qubits, std::move(amps));
}

// ---------------------------------------------------------------------------
// Operations

StateVector apply(const Operator& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw Error(ErrorCode::DimensionMismatch, "apply: U.dim != 2^n");
  Vector out = u.matrix() * psi.amplitudes();
  if (u.is_unitary()) return StateVector(psi.n_qubits(), std::move(out), StateVector::Unchecked{});
  return StateVector(psi.n_qubits(), std::move(out));
}

StateVector iterate(const Operator& u, const StateVector& psi, int t) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "iterate: t must be >= 1");
  if (u.dim() != psi.dim()) throw Error(ErrorCode::DimensionMismatch, "iterate: U.dim != 2^n");
  Vector cur = psi.amplitudes();
  Vector next(cur.size());
  for (int step = 0; step < t; ++step) {
    next.noalias() = u.matrix() * cur;
    cur.swap(next);
  }
  if (u.is_unitary()) return StateVector(psi.n_qubits(), std::move(cur), StateVector::Unchecked{});
  return StateVector(psi.n_qubits(), std::move(cur));
}

Operator matrix_power(const Operator& u, int t) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "matrix_power: t must be >= 1");
  if (!u.is_unitary()) throw Error(ErrorCode::NotUnitary, "matrix_power expects a unitary");
  Matrix result;
  Matrix base = u.matrix();
  bool have_result = false;
  for (int e = t;;) {
    if (e & 1) {
      if (have_result) {
        result = result * base;
      } else {
        result = base;
        have_result = true;
      }
    }
    e >>= 1;
    if (e == 0) break;
    base = base * base;
  }
  return Operator::unitary(std::move(result));
}

namespace {

SpectralData sorted_spectrum(const std::vector<double>& raw, const Matrix& vectors) {
  const auto n = static_cast<Eigen::Index>(raw.size());
  std::vector<Eigen::Index> order(raw.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)];
  });
  SpectralData out;
  out.phases.resize(raw.size());
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.phases[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(src)];
    out.vectors.col(k) = vectors.col(src);
  }
  return out;
}

double wrap_phase(Complex z) {
  double theta = std::arg(z);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return theta;
}

double reconstruction_residual(const Matrix& u, const SpectralData& s) {
  Vector d(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) d(k) = std::polar(1.0, s.phases[static_cast<std::size_t>(k)]);
  const Matrix rebuilt = s.vectors * d.asDiagonal() * s.vectors.adjoint();
  return (rebuilt - u).cwiseAbs().maxCoeff();
}

// Cayley route: W = e^{i beta} U has the same eigenvectors as the Hermitian
// H = i (I - W)(I + W)^{-1}, whose eigenvalues tan(theta/2) are a bijection of
// the circle minus -1, so no degeneracies are introduced. beta is picked to
// keep the spectrum of W away from -1. Phases come from Rayleigh quotients.
std::optional<SpectralData> cayley_decomposition(const Matrix& u) {
  const Eigen::Index n = u.rows();
  const Matrix id = Matrix::Identity(n, n);
  double best_rcond = -1.0;
  Matrix best_h;
  for (int attempt = 0; attempt < 6 && best_rcond < 1e-3; ++attempt) {
    // Golden-angle offsets give well spread trial rotations.
    const double beta = attempt * 2.399963229728653;
    const Matrix w = std::polar(1.0, beta) * u;
    Eigen::PartialPivLU<Matrix> lu(id + w);
    const double rcond = lu.rcond();
    if (rcond > best_rcond) {
      best_rcond = rcond;
      // (I + W)^{-1} and (I - W) commute.
      best_h = Complex(0.0, 1.0) * lu.solve(id - w);
    }
  }
  if (best_rcond < 1e-12) return std::nullopt;
  const Matrix h = 0.5 * (best_h + best_h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const Matrix& v = solver.eigenvectors();
  const Matrix uv = u * v;
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) raw[static_cast<std::size_t>(k)] = wrap_phase(v.col(k).dot(uv.col(k)));
  return sorted_spectrum(raw, v);
}

}  // namespace

SpectralData spectral_decomposition(const Operator& u) {
  const Eigen::Index n = u.dim();
  const double residual = unitarity_residual(u.matrix());
  if (!(residual <= kSpectralUnitaryTolerance * static_cast<double>(n))) {
    throw Error(ErrorCode::NotUnitary, "spectral_decomposition: residual " + std::to_string(residual));
  }
  if (auto fast = cayley_decomposition(u.matrix())) {
    if (reconstruction_residual(u.matrix(), *fast) <= kReconstructionTolerance) return std::move(*fast);
  }
  Eigen::ComplexSchur<Matrix> schur(u.matrix(), /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "complex Schur iteration did not converge");
  }
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = wrap_phase(schur.matrixT()(i, i));
  return sorted_spectrum(raw, schur.matrixU());
}

Operator dft(Eigen::Index n, bool half_shift) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dft: N must be >= 1");
  const double s = half_shift ? 0.5 : 0.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // k*j is reduced mod N first so the angle stays in [0, 2pi).
      double angle;
      if (half_shift) {
        angle = -2.0 * std::numbers::pi * (static_cast<double>(k) + s) * (static_cast<double>(j) + s) /
                static_cast<double>(n);
      } else {
        angle = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      }
      f(k, j) = std::polar(scale, angle);
    }
  }
  return Operator::unitary(std::move(f));
}

double qubit_purity(const StateVector& psi, int j) {
  return qubit_purity(psi.amplitudes(), psi.n_qubits(), j);
}

}  // namespace rmtlab
