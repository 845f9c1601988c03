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

#include "rmtlab/circuits.hpp"

#include <numbers>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

constexpr int kMaxQubits = 14;

void check_qubits(int n, int min) {
  if (n < min) {
    throw Error(min >= 2 ? ErrorCode::TooFewQubits : ErrorCode::InvalidArgument,
                "need at least " + std::to_string(min) + " qubits");
  }
  if (n > kMaxQubits) throw Error(ErrorCode::InvalidArgument, "too many qubits for a dense operator");
}

std::vector<Matrix> draw_layer(int n, RngStream& rng) {
  std::vector<Matrix> gates;
  gates.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) gates.push_back(su2_haar(rng).matrix());
  return gates;
}

void apply_layer(Matrix& m, int n, const std::vector<Matrix>& gates) {
  for (int j = 1; j <= n; ++j) apply_single_qubit(m, n, j, gates[static_cast<std::size_t>(j - 1)]);
}

}  // namespace

Vector nn_coupling_phases(int n_qubits) {
  check_qubits(n_qubits, 2);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Vector phases(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    int sum = 0;
    for (int j = 1; j < n_qubits; ++j) {
      const int zj = ((b >> (n_qubits - j)) & 1) ? -1 : 1;
      const int zk = ((b >> (n_qubits - j - 1)) & 1) ? -1 : 1;
      sum += zj * zk;
    }
    phases(b) = std::polar(1.0, 0.25 * std::numbers::pi * sum);
  }
  return phases;
}

Operator nn_coupling(int n_qubits) {
  return Operator::unitary(Matrix(nn_coupling_phases(n_qubits).asDiagonal()));
}

void apply_single_qubit(Matrix& m, int n_qubits, int j, const Matrix& gate) {
  if (j < 1 || j > n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit index out of range");
  if (m.rows() != (Eigen::Index{1} << n_qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "matrix rows must be 2^n");
  }
  const Eigen::Index stride = Eigen::Index{1} << (n_qubits - j);
  const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (Eigen::Index block = 0; block < m.rows(); block += 2 * stride) {
      for (Eigen::Index b = block; b < block + stride; ++b) {
        const Complex a0 = m(b, col);
        const Complex a1 = m(b + stride, col);
        m(b, col) = g00 * a0 + g01 * a1;
        m(b + stride, col) = g10 * a0 + g11 * a1;
      }
    }
  }
}

Operator rotation_layer(int n_qubits, RngStream& rng) {
  check_qubits(n_qubits, 1);
  const auto gates = draw_layer(n_qubits, rng);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Identity(dim, dim);
  apply_layer(m, n_qubits, gates);
  return Operator::unitary(std::move(m));
}

Operator pseudo_random_operator(const PseudoRandomSpec& spec, RngStream& rng) {
  check_qubits(spec.n_qubits, 2);
  if (spec.iterations < 0) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 0");
  const int n = spec.n_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Vector coupling = nn_coupling_phases(n);
  // Built column-wise: each layer acts on the identity's columns in place.
  Matrix m = Matrix::Identity(dim, dim);
  for (int k = 0; k < spec.iterations; ++k) {
    apply_layer(m, n, draw_layer(n, rng));
    m = coupling.asDiagonal() * m;
  }
  apply_layer(m, n, draw_layer(n, rng));
  return Operator::unitary(std::move(m));
}

PseudoRandomSpec parse_pseudo_spec(std::string_view text) {
  const auto parts = split_spec(text);
  if (parts.size() != 3 || parts[0] != "pseudo") {
    throw Error(ErrorCode::InvalidArgument, "expected pseudo:n:m, got '" + std::string(text) + "'");
  }
  PseudoRandomSpec spec;
  spec.n_qubits = static_cast<int>(parse_int(parts[1], "n"));
  spec.iterations = static_cast<int>(parse_int(parts[2], "m"));
  check_qubits(spec.n_qubits, 2);
  if (spec.iterations < 0) throw Error(ErrorCode::InvalidArgument, "m must be >= 0");
  return spec;
}

std::string to_string(const PseudoRandomSpec& spec) {
  return "pseudo:" + std::to_string(spec.n_qubits) + ":" + std::to_string(spec.iterations);
}

}  // namespace rmtlab
