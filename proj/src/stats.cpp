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

#include "rmtlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::string_view kLibraryMagic{"RMTREF1\0", 8};

void require_nonempty(const EmpiricalDistribution& d) {
  if (d.empty()) throw Error(ErrorCode::EmptySample, "distribution has no samples");
}

}  // namespace

// ---------------------------------------------------------------------------
// EmpiricalDistribution

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : samples_(std::move(samples)) {
  for (double v : samples_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

EmpiricalDistribution EmpiricalDistribution::pooled(const std::vector<EmpiricalDistribution>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<double> all;
  all.reserve(total);
  for (const auto& p : parts) all.insert(all.end(), p.samples_.begin(), p.samples_.end());
  return EmpiricalDistribution(std::move(all));
}

double EmpiricalDistribution::cdf(double x) const {
  require_nonempty(*this);
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::mean() const {
  require_nonempty(*this);
  return pairwise_sum(samples_) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::standard_deviation() const {
  const double mu = mean();
  if (samples_.size() < 2) return 0.0;
  std::vector<double> sq(samples_.size());
  std::transform(samples_.begin(), samples_.end(), sq.begin(),
                 [mu](double v) { return (v - mu) * (v - mu); });
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(samples_.size() - 1));
}

Histogram EmpiricalDistribution::histogram(std::size_t bins, double lo, double hi) const {
  if (bins == 0 || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "histogram needs bins > 0 and hi > lo");
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  std::uint64_t inside = 0;
  for (double v : samples_) {
    if (v < lo || v > hi) {
      ++h.outside;
      continue;
    }
    auto bin = static_cast<std::size_t>((v - lo) / width);
    bin = std::min(bin, bins - 1);
    ++h.counts[bin];
    ++inside;
  }
  h.density.assign(bins, 0.0);
  if (inside > 0) {
    for (std::size_t i = 0; i < bins; ++i) {
      h.density[i] = static_cast<double>(h.counts[i]) /
                     (static_cast<double>(inside) * (h.edges[i + 1] - h.edges[i]));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Sample extraction

EmpiricalDistribution eigenvector_amplitudes(const SpectralData& s) {
  return element_amplitudes(s.vectors);
}

EmpiricalDistribution eigenphase_spacings(const std::vector<double>& phases) {
  const std::size_t n = phases.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "spacings need at least two phases");
  std::vector<double> sorted = phases;
  std::sort(sorted.begin(), sorted.end());
  const double scale = static_cast<double>(n) / (2.0 * kPi);
  std::vector<double> gaps(n);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = (sorted[i + 1] - sorted[i]) * scale;
  gaps[n - 1] = (sorted[0] + 2.0 * kPi - sorted[n - 1]) * scale;
  return EmpiricalDistribution(std::move(gaps));
}

// ---------------------------------------------------------------------------
// Reference CDFs and KS

ReferenceCdf exponential_cdf() {
  return {"exponential", [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }, {}};
}

double wigner_surmise_cdf(double s) {
  if (s <= 0.0) return 0.0;
  return std::erf(2.0 * s / std::sqrt(kPi)) - (4.0 * s / kPi) * std::exp(-4.0 * s * s / kPi);
}

ReferenceCdf wigner_surmise_reference() { return {"wigner_surmise_beta2", wigner_surmise_cdf, {}}; }

ReferenceCdf point_mass_cdf(double x0) {
  return {"point_mass", [x0](double x) { return x >= x0 ? 1.0 : 0.0; },
          [x0](double x) { return x > x0 ? 1.0 : 0.0; }};
}

double ks_distance(const EmpiricalDistribution& a, const ReferenceCdf& reference) {
  require_nonempty(a);
  const auto& xs = a.samples();
  const double m = static_cast<double>(xs.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    const double v = xs[i];
    std::size_t j = i;
    while (j < xs.size() && xs[j] == v) ++j;
    const double below = static_cast<double>(i) / m;
    const double at = static_cast<double>(j) / m;
    const double f = reference.at(v);
    const double f_left = reference.left_limit ? reference.left_limit(v) : f;
    sup = std::max({sup, std::abs(at - f), std::abs(below - f_left)});
    i = j;
  }
  return sup;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  require_nonempty(a);
  require_nonempty(b);
  const auto& xa = a.samples();
  const auto& xb = b.samples();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double v;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) {
      v = xa[i];
    } else {
      v = xb[j];
    }
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double ks_two_sample_pvalue(double distance, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) / static_cast<double>(na + nb);
  const double sq = std::sqrt(ne);
  const double lambda = (sq + 0.12 + 0.11 / sq) * distance;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

const char* to_string(ReferenceKind kind) noexcept {
  return kind == ReferenceKind::EigenvectorAmplitude ? "eigenvector_amplitude" : "eigenphase_spacing";
}

ReferenceKind parse_reference_kind(std::string_view text) {
  if (text == "eigenvector_amplitude" || text == "eigenvector") return ReferenceKind::EigenvectorAmplitude;
  if (text == "eigenphase_spacing" || text == "spacing") return ReferenceKind::EigenphaseSpacing;
  throw Error(ErrorCode::MissingReferenceKind, "unknown reference kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Reference library

std::vector<double> ReferenceLibrary::delta_grid() const {
  std::vector<double> grid;
  grid.reserve(entries.size());
  for (const auto& e : entries) grid.push_back(e.delta);
  return grid;
}

const EmpiricalDistribution& ReferenceLibrary::reference(std::size_t index, ReferenceKind kind) const {
  const auto& e = entries.at(index);
  const auto& d = kind == ReferenceKind::EigenvectorAmplitude ? e.eigenvector : e.spacing;
  if (d.empty()) {
    throw Error(ErrorCode::MissingReferenceKind,
                std::string("library has no ") + to_string(kind) + " reference");
  }
  return d;
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(static_cast<double>(i) / 50.0);
  return grid;
}

EmpiricalDistribution quantile_sketch(const EmpiricalDistribution& d, std::uint64_t points) {
  if (points == 0 || d.size() <= points) return d;
  const auto& xs = d.samples();
  const double m = static_cast<double>(xs.size());
  std::vector<double> out(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    auto idx = static_cast<std::size_t>((static_cast<double>(i) + 0.5) * m / static_cast<double>(points));
    out[i] = xs[std::min(idx, xs.size() - 1)];
  }
  return EmpiricalDistribution(std::move(out));
}

ReferenceLibrary build_reference_library(Eigen::Index n, const std::vector<double>& grid,
                                         std::uint64_t samples_per_delta, std::uint64_t seed,
                                         unsigned threads, std::uint64_t sketch_size) {
  if (samples_per_delta < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_delta must be >= 1");
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "delta grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw Error(ErrorCode::InvalidArgument, "grid outside [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "grid must ascend");
  }
  const std::size_t items = grid.size() * samples_per_delta;
  std::vector<EmpiricalDistribution> eig(items);
  std::vector<EmpiricalDistribution> sp(items);
  parallel_for(items, threads, [&](std::size_t item) {
    const std::size_t d = item / samples_per_delta;
    const std::uint64_t k = item % samples_per_delta;
    RngStream rng = make_stream(seed, "reflib/" + std::to_string(d), k);
    const Operator u = hurwitz_sample(n, grid[d], rng);
    const SpectralData s = spectral_decomposition(u);
    eig[item] = eigenvector_amplitudes(s);
    sp[item] = eigenphase_spacings(s);
  });

  ReferenceLibrary lib;
  lib.dim = static_cast<std::uint64_t>(n);
  lib.samples_per_delta = samples_per_delta;
  lib.seed = seed;
  lib.sketch_size = sketch_size;
  for (std::size_t d = 0; d < grid.size(); ++d) {
    const auto first = static_cast<std::ptrdiff_t>(d * samples_per_delta);
    const auto last = first + static_cast<std::ptrdiff_t>(samples_per_delta);
    std::vector<EmpiricalDistribution> e_parts(std::make_move_iterator(eig.begin() + first),
                                               std::make_move_iterator(eig.begin() + last));
    std::vector<EmpiricalDistribution> s_parts(std::make_move_iterator(sp.begin() + first),
                                               std::make_move_iterator(sp.begin() + last));
    ReferenceLibrary::Entry entry;
    entry.delta = grid[d];
    auto e_pool = EmpiricalDistribution::pooled(e_parts);
    auto s_pool = EmpiricalDistribution::pooled(s_parts);
    entry.eigvec_pooled = e_pool.size();
    entry.spacing_pooled = s_pool.size();
    entry.eigenvector = quantile_sketch(e_pool, sketch_size);
    entry.spacing = quantile_sketch(s_pool, sketch_size);
    lib.entries.push_back(std::move(entry));
  }
  return lib;
}

void ReferenceLibrary::save(const std::filesystem::path& path) const {
  std::ostringstream out(std::ios::binary);
  out.write(kLibraryMagic.data(), static_cast<std::streamsize>(kLibraryMagic.size()));
  detail::write_pod(out, dim);
  detail::write_pod(out, samples_per_delta);
  detail::write_pod(out, seed);
  detail::write_pod(out, sketch_size);
  detail::write_pod(out, static_cast<std::uint64_t>(entries.size()));
  for (const auto& e : entries) {
    detail::write_pod(out, e.delta);
    for (const auto* d : {&e.eigenvector, &e.spacing}) {
      detail::write_pod(out, d == &e.eigenvector ? e.eigvec_pooled : e.spacing_pooled);
      detail::write_pod(out, static_cast<std::uint64_t>(d->size()));
      detail::write_array(out, d->samples().data(), d->size());
    }
  }
  write_file_atomic(path, out.str());

  nlohmann::json manifest;
  manifest["format"] = "RMTREF1";
  manifest["binary"] = path.filename().string();
  manifest["dim"] = dim;
  manifest["samples_per_delta"] = samples_per_delta;
  manifest["seed"] = seed;
  manifest["sketch_size"] = sketch_size;
  manifest["delta_grid"] = delta_grid();
  auto& list = manifest["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    list.push_back({{"delta", e.delta},
                    {"eigenvector_pooled", e.eigvec_pooled},
                    {"eigenvector_stored", e.eigenvector.size()},
                    {"spacing_pooled", e.spacing_pooled},
                    {"spacing_stored", e.spacing.size()}});
  }
  std::filesystem::path manifest_path = path;
  manifest_path += ".json";
  write_file_atomic(manifest_path, manifest.dump(2) + "\n");
}

ReferenceLibrary ReferenceLibrary::load(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::istringstream in(bytes, std::ios::binary);
  detail::expect_magic(in, kLibraryMagic);
  ReferenceLibrary lib;
  lib.dim = detail::read_pod<std::uint64_t>(in);
  lib.samples_per_delta = detail::read_pod<std::uint64_t>(in);
  lib.seed = detail::read_pod<std::uint64_t>(in);
  lib.sketch_size = detail::read_pod<std::uint64_t>(in);
  const auto count = detail::read_pod<std::uint64_t>(in);
  if (count > (1u << 20)) throw Error(ErrorCode::Format, "implausible grid size");
  for (std::uint64_t i = 0; i < count; ++i) {
    Entry e;
    e.delta = detail::read_pod<double>(in);
    for (int which = 0; which < 2; ++which) {
      const auto pooled = detail::read_pod<std::uint64_t>(in);
      const auto stored = detail::read_pod<std::uint64_t>(in);
      if (stored > bytes.size() / 8) throw Error(ErrorCode::Format, "sample block exceeds file size");
      std::vector<double> xs(stored);
      detail::read_array(in, xs.data(), stored);
      if (!std::is_sorted(xs.begin(), xs.end())) throw Error(ErrorCode::Format, "sample block not sorted");
      if (which == 0) {
        e.eigvec_pooled = pooled;
        e.eigenvector = EmpiricalDistribution(std::move(xs));
      } else {
        e.spacing_pooled = pooled;
        e.spacing = EmpiricalDistribution(std::move(xs));
      }
    }
    lib.entries.push_back(std::move(e));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::Format, "trailing bytes in library");
  return lib;
}

// ---------------------------------------------------------------------------
// Fitting and export

DeltaFitResult delta_fit(const EmpiricalDistribution& target, const ReferenceLibrary& lib,
                         ReferenceKind kind) {
  require_nonempty(target);
  if (lib.entries.empty()) throw Error(ErrorCode::MissingReferenceKind, "reference library is empty");
  DeltaFitResult result;
  result.reference_kind = kind;
  result.distances.reserve(lib.entries.size());
  bool have = false;
  for (std::size_t i = 0; i < lib.entries.size(); ++i) {
    const double d = ks_distance(target, lib.reference(i, kind));
    result.distances.push_back(d);
    // Grid ascends, so <= prefers the larger delta on ties.
    if (!have || d <= result.distance) {
      result.distance = d;
      result.best_delta = lib.entries[i].delta;
      have = true;
    }
  }
  return result;
}

std::string to_value_csv(const EmpiricalDistribution& d) {
  std::string out = "value\n";
  for (double v : d.samples()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string to_histogram_csv(const Histogram& h) {
  std::string out = "bin_left,bin_right,density\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += format_double(h.edges[i]) + ',' + format_double(h.edges[i + 1]) + ',' +
           format_double(h.density[i]) + '\n';
  }
  return out;
}

}  // namespace rmtlab
