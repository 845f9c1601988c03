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

// Command-line front end: one subcommand per experiment plus paper-check.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmtlab/acceptance.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/parse.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAcceptance = 3;

struct Flags {
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t samples = 0;
  unsigned threads = 0;
  std::string config;
  std::vector<std::string> specs;
  std::vector<std::string> inputs;
  std::string reference;
  std::uint64_t reference_samples = 0;
  int t = 0;
  std::size_t bins = 0;
  int dim = 0;
  std::string format;
  std::vector<int> only;
  int property_cases = 0;
};

void print_report(const rmtlab::RunReport& report, const std::filesystem::path& out) {
  for (const auto& [key, value] : report.summary) std::cout << key << " = " << rmtlab::format_double(value) << '\n';
  std::cout << "wrote " << report.files.size() << " files under " << out.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using rmtlab::Experiment;
  CLI::App app{"Random-matrix and entanglement experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  auto* seed = app.add_option("--seed", f.seed, "Base seed for every random stream");
  auto* out = app.add_option("--out", f.out, "Output directory");
  auto* samples = app.add_option("--samples", f.samples, "Matrices per ensemble (samples per delta for build-ref)");
  auto* threads = app.add_option("--threads", f.threads, "Worker threads (results do not depend on this)");
  app.add_option("--config", f.config, "JSON config file or a previous run's manifest.json")->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("gen", "Write sampled operators or map powers to files");
  gen->add_option("spec", f.specs, "Ensemble, circuit or map specs");
  auto* gen_t = gen->add_option("--t", f.t, "Map power");
  auto* gen_format = gen->add_option("--format", f.format, "json or bin")->check(CLI::IsMember({"json", "bin"}));

  auto* stats = app.add_subcommand("stats", "Pooled distributions of operator files");
  stats->add_option("inputs", f.inputs, "Operator files")->check(CLI::ExistingFile);

  auto* fit = app.add_subcommand("fit-delta", "Best-fit delta of operator files against a reference library");
  fit->add_option("inputs", f.inputs, "Operator files")->check(CLI::ExistingFile);
  auto* fit_ref = fit->add_option("--reference", f.reference, "Reference library");

  std::vector<CLI::App*> figures;
  std::vector<CLI::Option*> ref_opts;
  std::vector<CLI::Option*> ref_sample_opts;
  std::vector<CLI::Option*> bin_opts;
  for (const auto& [name, help] : {std::pair{"fig1", "Interpolating-ensemble distributions"},
                                   std::pair{"fig2", "Pseudo-random circuit distributions and delta fits"},
                                   std::pair{"fig3", "Entanglement time series of quantized maps"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--spec", f.specs, "Override the default specs");
    ref_opts.push_back(sub->add_option("--reference", f.reference, "Reference library (built there if missing)"));
    ref_sample_opts.push_back(
        sub->add_option("--reference-samples", f.reference_samples, "Samples per delta when building"));
    bin_opts.push_back(sub->add_option("--bins", f.bins, "Histogram bins"));
    figures.push_back(sub);
  }
  auto* fig3_t = figures[2]->add_option("--t-max", f.t, "Iterations for every map");

  auto* qtable = app.add_subcommand("q-table", "Mean entanglement per ensemble, circuit or map");
  qtable->add_option("--spec", f.specs, "Override the default specs");
  auto* qtable_t = qtable->add_option("--t", f.t, "Iterations before measuring Q");

  auto* build = app.add_subcommand("build-ref", "Build an interpolating-ensemble reference library");
  auto* build_ref = build->add_option("--reference", f.reference, "Output path (default <out>/reference.bin)");
  auto* build_dim = build->add_option("--dim", f.dim, "Matrix dimension");

  auto* check = app.add_subcommand("paper-check", "Run the acceptance checks and print PASS/FAIL per claim");
  auto* check_ref = check->add_option("--reference", f.reference, "Reference library cache");
  auto* check_ref_samples = check->add_option("--reference-samples", f.reference_samples, "Samples per delta when building");
  check->add_option("--only", f.only, "Criterion ids to run");
  auto* check_cases = check->add_option("--property-cases", f.property_cases, "Randomized invariant cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (check->parsed()) {
      rmtlab::AcceptanceOptions opt;
      if (*seed) opt.seed = f.seed;
      if (*samples) opt.samples = f.samples;
      if (*threads) opt.threads = f.threads;
      if (*check_ref) opt.reference_library = f.reference;
      if (*check_ref_samples) opt.reference_samples = f.reference_samples;
      if (*check_cases) opt.property_cases = f.property_cases;
      opt.only = f.only;
      const auto results = rmtlab::run_acceptance(opt, std::cout);
      bool all = true;
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& r : results) {
        all = all && r.pass;
        doc.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      }
      if (*out) {
        std::filesystem::create_directories(f.out);
        rmtlab::write_file_atomic(std::filesystem::path(f.out) / "paper_check.json", doc.dump(2) + "\n");
      }
      std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
      return all ? kExitOk : kExitAcceptance;
    }

    rmtlab::ExperimentConfig config;
    if (!f.config.empty()) config = rmtlab::config_from_json(rmtlab::read_file(f.config));
    const CLI::App* sub = app.get_subcommands().front();
    config.experiment = rmtlab::parse_experiment(sub->get_name());
    if (*seed) config.seed = f.seed;
    if (*out) config.out = f.out;
    if (*threads) config.threads = f.threads;
    if (*samples) {
      if (config.experiment == Experiment::BuildRef) {
        config.reference_samples = f.samples;
      } else {
        config.samples = f.samples;
      }
    }
    if (!f.specs.empty()) config.specs = f.specs;
    if (!f.inputs.empty()) config.inputs.assign(f.inputs.begin(), f.inputs.end());
    if (*gen_t || *fig3_t || *qtable_t) config.t_max = f.t;
    if (*gen_format) config.format = f.format;
    if (*fit_ref || *build_ref) config.reference_library = f.reference;
    for (std::size_t i = 0; i < figures.size(); ++i) {
      if (*ref_opts[i]) config.reference_library = f.reference;
      if (*ref_sample_opts[i]) config.reference_samples = f.reference_samples;
      if (*bin_opts[i]) config.bins = f.bins;
    }
    if (*build_dim) config.reference_dim = f.dim;
    print_report(rmtlab::run_experiment(config), config.out);
    return kExitOk;
  } catch (const rmtlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rmtlab::is_numerical(e.code()) ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
