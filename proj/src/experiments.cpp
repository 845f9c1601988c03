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

#include "rmtlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "rmtlab/chaosmaps.hpp"
#include "rmtlab/circuits.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/entangle.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Histogram ranges for the plotted distributions.
constexpr double kAmplitudeMax = 8.0;
constexpr double kSpacingMax = 4.0;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string label_of(std::string_view spec) {
  std::string s(spec);
  for (char& c : s) {
    if (c == ':') c = '_';
  }
  return s;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Collects every file a run writes so the manifest can list and hash them.
class Outputs {
 public:
  Outputs(const ExperimentConfig& config, Experiment experiment) : config_(config) {
    report_.experiment = experiment;
    fs::create_directories(config.out);
  }

  void write(const fs::path& rel, std::string_view contents) {
    write_file_atomic(config_.out / rel, contents);
    record(rel, contents);
  }

  void record(const fs::path& rel, std::string_view contents) {
    report_.files.push_back(rel);
    listed_.push_back({{"path", rel.generic_string()},
                       {"bytes", contents.size()},
                       {"fnv1a64", hex64(fnv1a64(contents))}});
  }

  std::map<std::string, double>& summary() { return report_.summary; }
  std::map<std::string, double>& timings() { return report_.timings_s; }

  RunReport finish() {
    json summary = json::object();
    for (const auto& [k, v] : report_.summary) summary[k] = v;
    write("summary.json", summary.dump(2) + "\n");

    json manifest;
    manifest["program"] = "rmtlab";
    manifest["version"] = std::string(kVersion);
    manifest["config"] = json::parse(config_to_json(config_));
    manifest["seeds"] = {{"seed", config_.seed},
                         {"generator", "philox4x32-10"},
                         {"streams", "stream id derived from (spec string, sample index)"}};
    manifest["outputs"] = listed_;
    const std::string text = manifest.dump(2) + "\n";
    write_file_atomic(config_.out / "manifest.json", text);
    report_.files.push_back("manifest.json");

    json timings = json::object();
    for (const auto& [k, v] : report_.timings_s) timings[k] = v;
    write_file_atomic(config_.out / "timings.json", timings.dump(2) + "\n");
    report_.files.push_back("timings.json");
    return report_;
  }

 private:
  const ExperimentConfig& config_;
  RunReport report_;
  json listed_ = json::array();
};

std::string reference_curves_csv() {
  std::string out = "x,exponential,wigner_surmise\n";
  const double pi = std::numbers::pi;
  for (int i = 0; i <= 400; ++i) {
    const double x = i * 0.02;
    const double surmise = 32.0 / (pi * pi) * x * x * std::exp(-4.0 * x * x / pi);
    out += format_double(x) + ',' + format_double(std::exp(-x)) + ',' + format_double(surmise) + '\n';
  }
  return out;
}

void record_library(Outputs& out, const ExperimentConfig& config) {
  if (!config.reference_library.empty()) return;
  out.record("reference.bin", read_file(config.out / "reference.bin"));
  out.record("reference.bin.json", read_file(config.out / "reference.bin.json"));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, message);
}

std::vector<std::string> specs_or(const ExperimentConfig& config, std::vector<std::string> defaults) {
  return config.specs.empty() ? std::move(defaults) : config.specs;
}

std::string canonical_spec(std::string_view spec) {
  if (spec.starts_with("pseudo:")) return to_string(parse_pseudo_spec(spec));
  if (is_map_spec(spec)) return to_string(parse_map_spec(spec));
  return to_string(parse_ensemble_spec(spec));
}

std::vector<Operator> sample_many(const std::string& spec, std::uint64_t count, std::uint64_t seed,
                                  unsigned threads) {
  std::vector<Operator> ops(count, Operator::identity(1));
  parallel_for(count, threads, [&](std::size_t i) { ops[i] = sample_spec(spec, seed, i); });
  return ops;
}

struct FitRow {
  std::string label;
  std::string target;
  DeltaFitResult result;
};

void add_fits(std::vector<FitRow>& rows, const std::string& label, const PooledStatistics& st,
              const ReferenceLibrary& lib) {
  rows.push_back({label, "element", delta_fit(st.elements, lib, ReferenceKind::EigenvectorAmplitude)});
  rows.push_back({label, "element", delta_fit(st.elements, lib, ReferenceKind::EigenphaseSpacing)});
  rows.push_back({label, "eigenvector", delta_fit(st.eigenvectors, lib, ReferenceKind::EigenvectorAmplitude)});
  rows.push_back({label, "spacing", delta_fit(st.spacings, lib, ReferenceKind::EigenphaseSpacing)});
}

void write_fits(Outputs& out, const fs::path& dir, const std::vector<FitRow>& rows, const ReferenceLibrary& lib) {
  std::string best = "label,target,reference,best_delta,distance\n";
  std::string grid = "label,target,reference,delta,distance\n";
  const auto deltas = lib.delta_grid();
  for (const auto& r : rows) {
    const std::string key = r.label + ',' + r.target + ',' + to_string(r.result.reference_kind);
    best += key + ',' + format_double(r.result.best_delta) + ',' + format_double(r.result.distance) + '\n';
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      grid += key + ',' + format_double(deltas[i]) + ',' + format_double(r.result.distances[i]) + '\n';
    }
    const std::string prefix = r.label + ".fit_" + r.target + '_' + to_string(r.result.reference_kind);
    out.summary()[prefix + ".delta"] = r.result.best_delta;
    out.summary()[prefix + ".distance"] = r.result.distance;
  }
  out.write(dir / "fits.csv", best);
  out.write(dir / "fit_distances.csv", grid);
}

void write_histograms(Outputs& out, const fs::path& dir, const std::string& label, const PooledStatistics& st,
                      std::size_t bins) {
  out.write(dir / ("element_" + label + ".csv"), to_histogram_csv(st.elements.histogram(bins, 0.0, kAmplitudeMax)));
  if (!st.eigenvectors.empty()) {
    out.write(dir / ("eigenvector_" + label + ".csv"),
              to_histogram_csv(st.eigenvectors.histogram(bins, 0.0, kAmplitudeMax)));
    out.write(dir / ("spacing_" + label + ".csv"), to_histogram_csv(st.spacings.histogram(bins, 0.0, kSpacingMax)));
  }
  if (st.q) out.write(dir / ("q_" + label + ".csv"), to_histogram_csv(st.q->histogram(bins, 0.0, 1.0)));
}

void summarize(Outputs& out, const std::string& label, const PooledStatistics& st) {
  auto& s = out.summary();
  s[label + ".ks_element_exponential"] = ks_distance(st.elements, exponential_cdf());
  if (!st.eigenvectors.empty()) {
    s[label + ".ks_eigenvector_exponential"] = ks_distance(st.eigenvectors, exponential_cdf());
    s[label + ".ks_spacing_surmise"] = ks_distance(st.spacings, wigner_surmise_reference());
    s[label + ".ks_spacing_poisson"] = ks_distance(st.spacings, exponential_cdf());
  }
  if (st.q) s[label + ".mean_q"] = st.q->mean();
}

// Shared body of the two distribution figures.
RunReport distribution_study(const ExperimentConfig& config, Experiment experiment,
                             const std::vector<std::string>& specs, bool fits) {
  require(config.samples > 0, "samples must be positive");
  Outputs out(config, experiment);
  Stopwatch clock;
  const fs::path dir = to_string(experiment);
  std::optional<ReferenceLibrary> lib;
  if (fits) {
    const fs::path path = config.reference_library.empty() ? config.out / "reference.bin" : config.reference_library;
    lib = load_or_build_library(path, config.reference_dim, config.reference_samples, config.seed, config.threads);
    record_library(out, config);
    out.timings()["reference_library"] = clock.lap();
  }
  std::vector<FitRow> rows;
  for (const auto& raw : specs) {
    const std::string spec = canonical_spec(raw);
    require(!is_map_spec(spec), "distribution figures take sampled specs, got " + spec);
    const std::string label = label_of(spec);
    const auto ops = sample_many(spec, config.samples, config.seed, config.threads);
    const PooledStatistics st = pooled_statistics(ops, config.threads);
    write_histograms(out, dir, label, st, config.bins);
    summarize(out, label, st);
    if (lib) {
      require(static_cast<std::uint64_t>(ops.front().dim()) == lib->dim,
              "reference library dimension does not match " + spec);
      add_fits(rows, label, st, *lib);
    }
    out.timings()[label] = clock.lap();
  }
  out.write(dir / "reference_curves.csv", reference_curves_csv());
  if (lib) write_fits(out, dir, rows, *lib);
  return out.finish();
}

json fit_to_json(const std::string& target, const DeltaFitResult& r) {
  return {{"target", target},
          {"reference", to_string(r.reference_kind)},
          {"best_delta", r.best_delta},
          {"distance", r.distance},
          {"distances", r.distances}};
}

}  // namespace

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::Gen: return "gen";
    case Experiment::Stats: return "stats";
    case Experiment::FitDelta: return "fit-delta";
    case Experiment::Fig1: return "fig1";
    case Experiment::Fig2: return "fig2";
    case Experiment::Fig3: return "fig3";
    case Experiment::QTable: return "q-table";
    case Experiment::BuildRef: return "build-ref";
  }
  return "?";
}

Experiment parse_experiment(std::string_view text) {
  for (auto e : {Experiment::Gen, Experiment::Stats, Experiment::FitDelta, Experiment::Fig1, Experiment::Fig2,
                 Experiment::Fig3, Experiment::QTable, Experiment::BuildRef}) {
    if (text == to_string(e)) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + std::string(text) + "'");
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["specs"] = c.specs;
  j["samples"] = c.samples;
  j["t_max"] = c.t_max;
  j["seed"] = c.seed;
  j["out"] = c.out.generic_string();
  j["reference_library"] = c.reference_library.generic_string();
  json inputs = json::array();
  for (const auto& p : c.inputs) inputs.push_back(p.generic_string());
  j["inputs"] = inputs;
  j["threads"] = c.threads;
  j["bins"] = c.bins;
  j["reference_samples"] = c.reference_samples;
  j["reference_dim"] = c.reference_dim;
  j["format"] = c.format;
  return j.dump(2);
}

ExperimentConfig config_from_json(std::string_view text, ExperimentConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, std::string("config is not valid JSON: ") + e.what());
  }
  if (j.contains("config") && j.contains("outputs")) j = j["config"];
  if (!j.is_object()) throw Error(ErrorCode::Format, "config must be a JSON object");
  static const std::vector<std::string> known = {"experiment", "specs",  "samples",           "t_max",
                                                 "seed",       "out",    "reference_library", "inputs",
                                                 "threads",    "bins",   "reference_samples", "reference_dim",
                                                 "format"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
    }
  }
  try {
    if (j.contains("experiment")) base.experiment = parse_experiment(j["experiment"].get<std::string>());
    if (j.contains("specs")) base.specs = j["specs"].get<std::vector<std::string>>();
    if (j.contains("samples")) base.samples = j["samples"].get<std::uint64_t>();
    if (j.contains("t_max")) base.t_max = j["t_max"].get<int>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) base.out = j["out"].get<std::string>();
    if (j.contains("reference_library")) base.reference_library = j["reference_library"].get<std::string>();
    if (j.contains("inputs")) {
      base.inputs.clear();
      for (const auto& p : j["inputs"]) base.inputs.emplace_back(p.get<std::string>());
    }
    if (j.contains("threads")) base.threads = j["threads"].get<unsigned>();
    if (j.contains("bins")) base.bins = j["bins"].get<std::size_t>();
    if (j.contains("reference_samples")) base.reference_samples = j["reference_samples"].get<std::uint64_t>();
    if (j.contains("reference_dim")) base.reference_dim = j["reference_dim"].get<int>();
    if (j.contains("format")) base.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, std::string("bad config value: ") + e.what());
  }
  return base;
}

bool is_map_spec(std::string_view spec) {
  return spec.starts_with("sawtooth:") || spec.starts_with("harper:") || spec.starts_with("baker:");
}

Operator sample_spec(std::string_view spec, std::uint64_t seed, std::uint64_t index) {
  if (spec.starts_with("pseudo:")) {
    const PseudoRandomSpec p = parse_pseudo_spec(spec);
    RngStream rng = make_stream(seed, to_string(p), index);
    return pseudo_random_operator(p, rng);
  }
  const EnsembleSpec e = parse_ensemble_spec(spec);
  RngStream rng = make_stream(seed, to_string(e), index);
  return sample(e, rng);
}

PooledStatistics pooled_statistics(const std::vector<Operator>& operators, unsigned threads, bool with_spectra) {
  if (operators.empty()) throw Error(ErrorCode::EmptySample, "no operators");
  const std::size_t count = operators.size();
  const int n = log2_exact(static_cast<std::uint64_t>(operators.front().dim()));
  const bool with_q = n >= 2;
  std::vector<EmpiricalDistribution> elements(count);
  std::vector<EmpiricalDistribution> vectors(with_spectra ? count : 0);
  std::vector<EmpiricalDistribution> spacings(with_spectra ? count : 0);
  std::vector<EmpiricalDistribution> q(with_q ? count : 0);
  parallel_for(count, threads, [&](std::size_t i) {
    const Operator& u = operators[i];
    if (u.dim() != operators.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch, "operators differ in dimension");
    }
    elements[i] = element_amplitudes(u);
    if (with_spectra) {
      const SpectralData s = spectral_decomposition(u);
      vectors[i] = eigenvector_amplitudes(s);
      spacings[i] = eigenphase_spacings(s);
    }
    if (with_q) q[i] = EmpiricalDistribution(column_q(u.matrix(), n));
  });
  PooledStatistics st;
  st.elements = EmpiricalDistribution::pooled(elements);
  if (with_spectra) {
    st.eigenvectors = EmpiricalDistribution::pooled(vectors);
    st.spacings = EmpiricalDistribution::pooled(spacings);
  }
  if (with_q) st.q = EmpiricalDistribution::pooled(q);
  return st;
}

ReferenceLibrary load_or_build_library(const fs::path& path, int dim, std::uint64_t samples_per_delta,
                                       std::uint64_t seed, unsigned threads) {
  if (fs::exists(path)) {
    ReferenceLibrary lib = ReferenceLibrary::load(path);
    if (lib.dim != static_cast<std::uint64_t>(dim)) {
      throw Error(ErrorCode::InvalidArgument, "reference library " + path.string() + " has dimension " +
                                                  std::to_string(lib.dim) + ", expected " + std::to_string(dim));
    }
    return lib;
  }
  require(samples_per_delta > 0, "reference_samples must be positive");
  ReferenceLibrary lib = build_reference_library(dim, default_delta_grid(), samples_per_delta, seed, threads);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  lib.save(path);
  return lib;
}

double haar_mean_q(int n_qubits) {
  const double dim = std::ldexp(1.0, n_qubits);
  return 2.0 - 2.0 * (2.0 + dim / 2.0) / (dim + 1.0);
}

RunReport run_gen(const ExperimentConfig& config) {
  require(!config.specs.empty(), "gen needs at least one spec");
  require(config.format == "json" || config.format == "bin", "format must be json or bin");
  Outputs out(config, Experiment::Gen);
  Stopwatch clock;
  double worst = 0.0;
  std::uint64_t written = 0;
  auto emit = [&](const std::string& name, const Operator& u) {
    const std::string bytes = config.format == "json" ? to_json(u) + "\n" : to_binary(u);
    out.write(fs::path("gen") / (name + '.' + config.format), bytes);
    worst = std::max(worst, unitarity_residual(u.matrix()));
    ++written;
  };
  for (const auto& raw : config.specs) {
    const std::string spec = canonical_spec(raw);
    if (is_map_spec(spec)) {
      const int t = std::max(config.t_max, 1);
      const Operator u = build_map(parse_map_spec(spec));
      emit(label_of(spec) + "_t" + std::to_string(t), t == 1 ? u : matrix_power(u, t));
      continue;
    }
    require(config.samples > 0, "samples must be positive");
    const auto ops = sample_many(spec, config.samples, config.seed, config.threads);
    for (std::size_t i = 0; i < ops.size(); ++i) emit(label_of(spec) + '_' + std::to_string(i), ops[i]);
  }
  out.summary()["operators"] = static_cast<double>(written);
  out.summary()["max_unitarity_residual"] = worst;
  out.timings()["total"] = clock.lap();
  return out.finish();
}

RunReport run_stats(const ExperimentConfig& config) {
  require(!config.inputs.empty(), "stats needs input operator files");
  Outputs out(config, Experiment::Stats);
  Stopwatch clock;
  std::vector<Operator> ops;
  for (const auto& p : config.inputs) ops.push_back(read_operator(p));
  for (const auto& u : ops) {
    if (!u.is_unitary()) throw Error(ErrorCode::NotUnitary, "stats needs unitary operators");
  }
  const PooledStatistics st = pooled_statistics(ops, config.threads);
  write_histograms(out, "stats", "pooled", st, config.bins);
  out.write("stats/element_values.csv", to_value_csv(st.elements));
  out.write("stats/eigenvector_values.csv", to_value_csv(st.eigenvectors));
  out.write("stats/spacing_values.csv", to_value_csv(st.spacings));
  if (st.q) out.write("stats/q_values.csv", to_value_csv(*st.q));
  out.write("stats/reference_curves.csv", reference_curves_csv());
  summarize(out, "pooled", st);
  out.summary()["operators"] = static_cast<double>(ops.size());
  out.timings()["total"] = clock.lap();
  return out.finish();
}

RunReport run_fit_delta(const ExperimentConfig& config) {
  require(!config.inputs.empty(), "fit-delta needs input operator files");
  if (config.reference_library.empty() || !fs::exists(config.reference_library)) {
    throw Error(ErrorCode::Io, "fit-delta needs an existing reference library (build one with build-ref)");
  }
  Outputs out(config, Experiment::FitDelta);
  Stopwatch clock;
  const ReferenceLibrary lib = ReferenceLibrary::load(config.reference_library);
  json results = json::array();
  for (const auto& p : config.inputs) {
    const Operator u = read_operator(p);
    if (static_cast<std::uint64_t>(u.dim()) != lib.dim) {
      throw Error(ErrorCode::DimensionMismatch, p.string() + " does not match the library dimension");
    }
    const PooledStatistics st = pooled_statistics({u}, 1);
    std::vector<FitRow> rows;
    const std::string label = p.filename().string();
    add_fits(rows, label, st, lib);
    json fits = json::array();
    for (const auto& r : rows) {
      fits.push_back(fit_to_json(r.target, r.result));
      const std::string key = label + ".fit_" + r.target + '_' + to_string(r.result.reference_kind);
      out.summary()[key + ".delta"] = r.result.best_delta;
      out.summary()[key + ".distance"] = r.result.distance;
    }
    results.push_back({{"input", p.generic_string()}, {"fits", fits}});
  }
  json doc = {{"delta_grid", lib.delta_grid()}, {"results", results}};
  out.write("fit_delta.json", doc.dump(2) + "\n");
  out.timings()["total"] = clock.lap();
  return out.finish();
}

RunReport run_fig1(const ExperimentConfig& config) {
  return distribution_study(config, Experiment::Fig1,
                            specs_or(config, {"interp:256:0.1", "interp:256:0.5", "interp:256:0.9", "interp:256:0.98"}),
                            !config.reference_library.empty());
}

RunReport run_fig2(const ExperimentConfig& config) {
  return distribution_study(config, Experiment::Fig2,
                            specs_or(config, {"pseudo:8:2", "pseudo:8:4", "pseudo:8:8", "pseudo:8:16"}), true);
}

RunReport run_fig3(const ExperimentConfig& config) {
  const auto specs = specs_or(config, {"sawtooth:256:1.5", "sawtooth:256:-1.5", "harper:256:1", "harper:256:0.1",
                                       "baker:256"});
  Outputs out(config, Experiment::Fig3);
  Stopwatch clock;
  const fs::path path = config.reference_library.empty() ? config.out / "reference.bin" : config.reference_library;
  const ReferenceLibrary lib =
      load_or_build_library(path, config.reference_dim, config.reference_samples, config.seed, config.threads);
  record_library(out, config);
  out.timings()["reference_library"] = clock.lap();
  std::vector<FitRow> rows;
  int longest = 0;
  for (const auto& raw : specs) {
    const std::string spec = canonical_spec(raw);
    require(is_map_spec(spec), "fig3 takes map specs, got " + spec);
    const MapSpec m = parse_map_spec(spec);
    const int t_max = config.t_max > 0 ? config.t_max : (m.kind == MapKind::Baker ? 100 : 50);
    longest = std::max(longest, t_max);
    const Operator u = build_map(m);
    const QTimeSeries series = q_time_series(u, t_max);
    const std::string label = label_of(spec);
    out.write(fs::path("fig3") / ("q_" + label + ".csv"), to_csv(series));
    out.summary()[label + ".q_t1"] = series.mean_q.front();
    out.summary()[label + ".q_final"] = series.mean_q.back();
    const std::size_t from = series.mean_q.size() > 11 ? series.mean_q.size() - 11 : 0;
    const std::span<const double> window(series.mean_q.data() + from, series.mean_q.size() - from);
    out.summary()[label + ".q_final_window_mean"] = pairwise_sum(window) / static_cast<double>(window.size());

    const Operator last = matrix_power(u, t_max);
    const std::array<std::pair<int, const Operator*>, 2> ends = {{{1, &u}, {t_max, &last}}};
    for (const auto& [t, op] : ends) {
      const EmpiricalDistribution e = element_amplitudes(*op);
      out.write(fs::path("fig3") / ("element_" + label + "_t" + std::to_string(t) + ".csv"),
                to_histogram_csv(e.histogram(config.bins, 0.0, kAmplitudeMax)));
      out.summary()[label + ".t" + std::to_string(t) + ".ks_element_exponential"] = ks_distance(e, exponential_cdf());
    }
    if (static_cast<std::uint64_t>(u.dim()) == lib.dim) {
      const EmpiricalDistribution e = element_amplitudes(last);
      const std::string tl = label + "_t" + std::to_string(t_max);
      rows.push_back({tl, "element", delta_fit(e, lib, ReferenceKind::EigenvectorAmplitude)});
      rows.push_back({tl, "element", delta_fit(e, lib, ReferenceKind::EigenphaseSpacing)});
    }
    out.timings()[label] = clock.lap();
  }
  std::string cue = "t,mean_q\n";
  const double haar = haar_mean_q(log2_exact(static_cast<std::uint64_t>(config.reference_dim)));
  for (int t = 1; t <= longest; ++t) cue += std::to_string(t) + ',' + format_double(haar) + '\n';
  out.write("fig3/q_cue_reference.csv", cue);
  out.summary()["cue_reference_q"] = haar;
  write_fits(out, "fig3", rows, lib);
  return out.finish();
}

RunReport run_q_table(const ExperimentConfig& config) {
  const auto specs = specs_or(config, {"cue-gue:256", "pseudo:8:2", "pseudo:8:4", "pseudo:8:8", "pseudo:8:16",
                                       "interp:256:0.9", "interp:256:0.98", "sawtooth:256:1.5", "harper:256:1",
                                       "baker:256"});
  require(config.samples > 0, "samples must be positive");
  Outputs out(config, Experiment::QTable);
  Stopwatch clock;
  std::string csv = "spec,t,samples,mean_q,std_error\n";
  for (const auto& raw : specs) {
    const std::string spec = canonical_spec(raw);
    const std::string label = label_of(spec);
    const int t = std::max(config.t_max, 1);
    std::vector<double> means;
    if (is_map_spec(spec)) {
      means.push_back(average_q_over_basis(build_map(parse_map_spec(spec)), t));
    } else {
      means.resize(config.samples);
      parallel_for(config.samples, config.threads,
                   [&](std::size_t i) { means[i] = average_q_over_basis(sample_spec(spec, config.seed, i), t); });
    }
    const EmpiricalDistribution d(means);
    const double mean = d.mean();
    const double se = means.size() > 1 ? d.standard_deviation() / std::sqrt(static_cast<double>(means.size())) : 0.0;
    csv += spec + ',' + std::to_string(t) + ',' + std::to_string(means.size()) + ',' + format_double(mean) + ',' +
           format_double(se) + '\n';
    out.summary()[label + ".mean_q"] = mean;
    out.summary()[label + ".std_error"] = se;
    out.timings()[label] = clock.lap();
  }
  out.write("q_table.csv", csv);
  return out.finish();
}

RunReport run_build_ref(const ExperimentConfig& config) {
  require(config.reference_samples > 0, "reference_samples must be positive");
  Outputs out(config, Experiment::BuildRef);
  Stopwatch clock;
  const fs::path path = config.reference_library.empty() ? config.out / "reference.bin" : config.reference_library;
  const ReferenceLibrary lib = build_reference_library(config.reference_dim, default_delta_grid(),
                                                       config.reference_samples, config.seed, config.threads);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  lib.save(path);
  record_library(out, config);
  out.summary()["dim"] = static_cast<double>(lib.dim);
  out.summary()["grid_points"] = static_cast<double>(lib.entries.size());
  out.summary()["samples_per_delta"] = static_cast<double>(lib.samples_per_delta);
  out.timings()["total"] = clock.lap();
  return out.finish();
}

RunReport run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::Gen: return run_gen(config);
    case Experiment::Stats: return run_stats(config);
    case Experiment::FitDelta: return run_fit_delta(config);
    case Experiment::Fig1: return run_fig1(config);
    case Experiment::Fig2: return run_fig2(config);
    case Experiment::Fig3: return run_fig3(config);
    case Experiment::QTable: return run_q_table(config);
    case Experiment::BuildRef: return run_build_ref(config);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment");
}

}  // namespace rmtlab
