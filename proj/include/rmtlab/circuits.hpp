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

#ifndef RMTLAB_CIRCUITS_HPP
#define RMTLAB_CIRCUITS_HPP

#include <string>
#include <string_view>

#include "rmtlab/qcore.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

struct PseudoRandomSpec {
  int n_qubits = 2;
  int iterations = 0;
};

/// Diagonal of exp(i pi/4 sum_{j=1}^{n-1} z_j z_{j+1}) on an open chain,
/// z_j = +1 when bit j of the basis index is 0.
Vector nn_coupling_phases(int n_qubits);
Operator nn_coupling(int n_qubits);

/// Applies a 2x2 gate to qubit j (1-based, most significant first) of every
/// column of m.
void apply_single_qubit(Matrix& m, int n_qubits, int j, const Matrix& gate);

/// R_1 (x) R_2 (x) ... (x) R_n with R_j = su2_haar drawn in qubit order.
Operator rotation_layer(int n_qubits, RngStream& rng);

/// L_final * prod_{k=m..1} [U_nnc * L_k]: m rounds of rotate-then-couple and a
/// closing rotation layer. Layers are drawn from rng in application order.
Operator pseudo_random_operator(const PseudoRandomSpec& spec, RngStream& rng);

/// Parses "pseudo:n:m".
PseudoRandomSpec parse_pseudo_spec(std::string_view text);
std::string to_string(const PseudoRandomSpec& spec);

}  // namespace rmtlab

#endif  // RMTLAB_CIRCUITS_HPP
