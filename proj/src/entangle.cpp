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

#include "rmtlab/entangle.hpp"

#include "rmtlab/parallel.hpp"
#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

int qubits_of(const Operator& u) {
  const int n = log2_exact(static_cast<std::uint64_t>(u.dim()));
  if (n < 0) throw Error(ErrorCode::NotPowerOfTwo, "operator dimension must be 2^n");
  if (n < 2) throw Error(ErrorCode::SingleQubit, "Q needs at least two qubits");
  return n;
}

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace

double meyer_wallach_q(const StateVector& psi) {
  return meyer_wallach_q(psi.amplitudes(), psi.n_qubits());
}

std::vector<double> column_q(const Matrix& states, int n_qubits) {
  std::vector<double> q(static_cast<std::size_t>(states.cols()));
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    q[static_cast<std::size_t>(c)] = meyer_wallach_q(states.col(c), n_qubits);
  }
  return q;
}

double average_q_over_basis(const Operator& u, int t) {
  const int n = qubits_of(u);
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "t must be >= 1");
  // Column b of the evolved identity is U^t |b>.
  Matrix states = u.matrix();
  Matrix next(states.rows(), states.cols());
  for (int step = 1; step < t; ++step) {
    next.noalias() = u.matrix() * states;
    states.swap(next);
  }
  return mean_of(column_q(states, n));
}

EmpiricalDistribution q_distribution(const std::vector<Operator>& operators, int t, unsigned threads) {
  if (operators.empty()) throw Error(ErrorCode::EmptySample, "no operators");
  const Eigen::Index dim = operators.front().dim();
  for (const auto& u : operators) {
    if (u.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "operators differ in dimension");
  }
  const int n = qubits_of(operators.front());
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "t must be >= 1");
  std::vector<std::vector<double>> per_op(operators.size());
  parallel_for(operators.size(), threads, [&](std::size_t i) {
    const Matrix& u = operators[i].matrix();
    Matrix states = u;
    for (int step = 1; step < t; ++step) states = u * states;
    per_op[i] = column_q(states, n);
  });
  std::vector<double> all;
  all.reserve(operators.size() * static_cast<std::size_t>(dim));
  for (auto& v : per_op) all.insert(all.end(), v.begin(), v.end());
  return EmpiricalDistribution(std::move(all));
}

QTimeSeries q_time_series(const Operator& u, int t_max, bool keep_per_state) {
  const int n = qubits_of(u);
  if (t_max < 1) throw Error(ErrorCode::InvalidArgument, "t_max must be >= 1");
  QTimeSeries series;
  if (keep_per_state) series.per_state.emplace();
  Matrix states = Matrix::Identity(u.dim(), u.dim());
  Matrix next(u.dim(), u.dim());
  for (int t = 1; t <= t_max; ++t) {
    next.noalias() = u.matrix() * states;
    states.swap(next);
    auto q = column_q(states, n);
    series.times.push_back(t);
    series.mean_q.push_back(mean_of(q));
    if (keep_per_state) series.per_state->push_back(std::move(q));
  }
  return series;
}

std::string to_csv(const QTimeSeries& series) {
  std::string out = "t,mean_q";
  const bool per_state = series.per_state.has_value() && !series.per_state->empty();
  if (per_state) {
    for (std::size_t b = 0; b < series.per_state->front().size(); ++b) out += ",q_state_" + std::to_string(b);
  }
  out += '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out += std::to_string(series.times[k]) + ',' + format_double(series.mean_q[k]);
    if (per_state) {
      for (double q : (*series.per_state)[k]) out += ',' + format_double(q);
    }
    out += '\n';
  }
  return out;
}

}  // namespace rmtlab
