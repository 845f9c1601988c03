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

#ifndef RMTLAB_ACCEPTANCE_HPP
#define RMTLAB_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace rmtlab {

struct AcceptanceOptions {
  std::uint64_t samples = 100;  // matrices per sampled ensemble
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Loaded if present, otherwise built with reference_samples per delta and cached here.
  std::filesystem::path reference_library;
  std::uint64_t reference_samples = 50;
  int property_cases = 1000;
  std::filesystem::path scratch;  // replay checks; defaults to a temp directory
  std::vector<int> only;          // criterion ids; empty runs all
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the reference-value checks at N = 256 and prints one PASS/FAIL line
/// per check to log as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

}  // namespace rmtlab

#endif  // RMTLAB_ACCEPTANCE_HPP
