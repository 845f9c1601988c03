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

// Meyer-Wallach entanglement Q = 2 - (2/n) sum_j Tr[rho_j^2] and its averages
// over evolved computational basis states.

#ifndef RMTLAB_ENTANGLE_HPP
#define RMTLAB_ENTANGLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rmtlab/qcore.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab {

template <typename Derived>
double meyer_wallach_q(const Eigen::MatrixBase<Derived>& amps, int n_qubits) {
  if (n_qubits < 2) throw Error(ErrorCode::SingleQubit, "Q needs at least two qubits");
  double purity_sum = 0.0;
  for (int j = 1; j <= n_qubits; ++j) purity_sum += qubit_purity(amps, n_qubits, j);
  return 2.0 - 2.0 * purity_sum / static_cast<double>(n_qubits);
}

double meyer_wallach_q(const StateVector& psi);

/// Q of every column of `states` (each column a 2^n amplitude vector).
std::vector<double> column_q(const Matrix& states, int n_qubits);

/// Mean Q of U^t |b> over all basis states b (pairwise-summed).
double average_q_over_basis(const Operator& u, int t);

/// One Q sample per (operator, basis state) pair after t iterations.
EmpiricalDistribution q_distribution(const std::vector<Operator>& operators, int t,
                                     unsigned threads = 1);

struct QTimeSeries {
  std::vector<int> times;
  std::vector<double> mean_q;
  /// per_state[k][b] = Q of basis state b at times[k], when requested.
  std::optional<std::vector<std::vector<double>>> per_state;
};

/// <Q(t)> for t = 1..t_max by incremental evolution of all basis states.
QTimeSeries q_time_series(const Operator& u, int t_max, bool keep_per_state = false);

/// CSV `t,mean_q[,q_state_0..]`.
std::string to_csv(const QTimeSeries& series);

}  // namespace rmtlab

#endif  // RMTLAB_ENTANGLE_HPP
