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

// Acceptance run: one PASS/FAIL line per target value, nonzero exit on
// any failure.

#include <iostream>

#include "CLI11.hpp"
#include "rmtlab/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  rmtlab::AcceptanceOptions opt;
  std::string reference;
  std::string scratch;
  app.add_option("--reference", reference, "Reference library cache (built if missing)");
  app.add_option("--reference-samples", opt.reference_samples, "Samples per delta when building the library");
  app.add_option("--samples", opt.samples, "Matrices per sampled ensemble");
  app.add_option("--seed", opt.seed, "Base seed");
  app.add_option("--threads", opt.threads, "Worker threads");
  app.add_option("--scratch", scratch, "Directory for replay checks");
  app.add_option("--only", opt.only, "Criterion ids to run");
  CLI11_PARSE(app, argc, argv);
  opt.reference_library = reference;
  opt.scratch = scratch;

  const auto results = rmtlab::run_acceptance(opt, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 3;
}
