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

#ifndef RMTLAB_EXPERIMENTS_HPP
#define RMTLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtlab/qcore.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Experiment { Gen, Stats, FitDelta, Fig1, Fig2, Fig3, QTable, BuildRef };
const char* to_string(Experiment e) noexcept;
Experiment parse_experiment(std::string_view text);

struct ExperimentConfig {
  Experiment experiment = Experiment::Fig1;
  /// Ensemble, circuit or map spec strings. Empty selects the experiment's defaults.
  std::vector<std::string> specs;
  std::uint64_t samples = 100;
  /// Iteration count for maps; 0 selects the experiment's default.
  int t_max = 0;
  std::uint64_t seed = 1;
  std::filesystem::path out = "rmtlab-out";
  /// Loaded if it exists, otherwise built and written there.
  std::filesystem::path reference_library;
  std::vector<std::filesystem::path> inputs;
  unsigned threads = 1;
  std::size_t bins = 40;
  std::uint64_t reference_samples = 50;
  int reference_dim = 256;
  std::string format = "json";  // gen output: json or bin
};

/// Canonical JSON with every field resolved.
std::string config_to_json(const ExperimentConfig& config);

/// Overrides fields of base with those present in text. A run manifest is
/// accepted too; its "config" member is used.
ExperimentConfig config_from_json(std::string_view text, ExperimentConfig base = {});

struct RunReport {
  Experiment experiment = Experiment::Fig1;
  std::vector<std::filesystem::path> files;  // relative to config.out
  std::map<std::string, double> summary;
  std::map<std::string, double> timings_s;
};

RunReport run_experiment(const ExperimentConfig& config);

RunReport run_gen(const ExperimentConfig& config);
RunReport run_stats(const ExperimentConfig& config);
RunReport run_fit_delta(const ExperimentConfig& config);
RunReport run_fig1(const ExperimentConfig& config);
RunReport run_fig2(const ExperimentConfig& config);
RunReport run_fig3(const ExperimentConfig& config);
RunReport run_q_table(const ExperimentConfig& config);
RunReport run_build_ref(const ExperimentConfig& config);

/// Sampled operator for an ensemble ("gue:N", "interp:N:d", ...) or circuit
/// ("pseudo:n:m") spec, drawn from stream (seed, spec, index).
Operator sample_spec(std::string_view spec, std::uint64_t seed, std::uint64_t index);
bool is_map_spec(std::string_view spec);

/// Distributions pooled over a set of operators.
struct PooledStatistics {
  EmpiricalDistribution elements;
  EmpiricalDistribution eigenvectors;
  EmpiricalDistribution spacings;
  std::optional<EmpiricalDistribution> q;  // power-of-two dimensions only
};

PooledStatistics pooled_statistics(const std::vector<Operator>& operators, unsigned threads,
                                   bool with_spectra = true);

ReferenceLibrary load_or_build_library(const std::filesystem::path& path, int dim,
                                       std::uint64_t samples_per_delta, std::uint64_t seed,
                                       unsigned threads);

/// Haar average of Q over n qubits: 2 - 2 (2 + 2^{n-1}) / (2^n + 1).
double haar_mean_q(int n_qubits);

}  // namespace rmtlab

#endif  // RMTLAB_EXPERIMENTS_HPP
