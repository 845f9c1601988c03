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

// Empirical distributions of matrix-element amplitudes, eigenvector
// amplitudes and eigenphase spacings; reference CDFs; Kolmogorov-Smirnov
// distances; and delta-fits against an interpolating-ensemble library.

#ifndef RMTLAB_STATS_HPP
#define RMTLAB_STATS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmtlab/qcore.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<std::uint64_t> counts;
  std::vector<double> density;
  std::uint64_t outside = 0;  // samples not covered by [edges.front(), edges.back()]
};

/// Sorted sample set. The CDF at x is (# samples <= x) / M.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples);

  /// Concatenates and re-sorts, so the result is independent of merge order.
  static EmpiricalDistribution pooled(const std::vector<EmpiricalDistribution>& parts);

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double cdf(double x) const;
  double mean() const;
  double standard_deviation() const;

  /// Uniform bins on [lo, hi]; density is normalized over in-range samples so
  /// that sum(density * width) = 1 whenever any sample is in range.
  Histogram histogram(std::size_t bins, double lo, double hi) const;

 private:
  std::vector<double> samples_;
};

/// x_ij = N |U_ij|^2 over all N^2 entries.
template <typename Derived>
EmpiricalDistribution element_amplitudes(const Eigen::MatrixBase<Derived>& u) {
  const double n = static_cast<double>(u.rows());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(u.size()));
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    for (Eigen::Index r = 0; r < u.rows(); ++r) out.push_back(n * std::norm(u(r, c)));
  }
  return EmpiricalDistribution(std::move(out));
}

inline EmpiricalDistribution element_amplitudes(const Operator& u) {
  return element_amplitudes(u.matrix());
}

/// y = N |c^l_k|^2 over all eigenvector components.
EmpiricalDistribution eigenvector_amplitudes(const SpectralData& s);

/// N nearest-neighbor gaps on the circle (wrap-around gap included), rescaled
/// by N / (2 pi) to unit mean.
EmpiricalDistribution eigenphase_spacings(const std::vector<double>& phases);
inline EmpiricalDistribution eigenphase_spacings(const SpectralData& s) {
  return eigenphase_spacings(s.phases);
}

/// Analytic CDF with an explicit left limit so point masses compare exactly.
struct ReferenceCdf {
  std::string name;
  std::function<double(double)> at;
  std::function<double(double)> left_limit;  // empty means continuous
};

/// 1 - e^{-x}: CUE element / GUE eigenvector amplitudes, and Poisson spacings.
ReferenceCdf exponential_cdf();
/// Beta = 2 Wigner surmise, P(s) = (32/pi^2) s^2 e^{-4 s^2/pi}.
double wigner_surmise_cdf(double s);
ReferenceCdf wigner_surmise_reference();
ReferenceCdf point_mass_cdf(double x0);

/// One-sample sup |F_A - F|, checked on both sides of every jump of F_A.
double ks_distance(const EmpiricalDistribution& a, const ReferenceCdf& reference);
/// Two-sample sup |F_A - F_B| over all pooled sample points.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Asymptotic two-sample KS p-value (Kolmogorov series with the usual
/// small-sample correction of the statistic).
double ks_two_sample_pvalue(double distance, std::size_t na, std::size_t nb);

enum class ReferenceKind { EigenvectorAmplitude, EigenphaseSpacing };
const char* to_string(ReferenceKind kind) noexcept;
ReferenceKind parse_reference_kind(std::string_view text);

/// Per-delta reference distributions of the interpolating ensembles.
///
/// Large pools are stored as a quantile sketch (evenly spaced order
/// statistics) of at most `sketch_size` points; KS distances against a sketch
/// differ from the full pool by at most 1 / sketch_size.
struct ReferenceLibrary {
  struct Entry {
    double delta = 0.0;
    std::uint64_t eigvec_pooled = 0;
    std::uint64_t spacing_pooled = 0;
    EmpiricalDistribution eigenvector;
    EmpiricalDistribution spacing;
  };

  std::uint64_t dim = 0;
  std::uint64_t samples_per_delta = 0;
  std::uint64_t seed = 0;
  std::uint64_t sketch_size = 0;
  std::vector<Entry> entries;  // ascending delta

  std::vector<double> delta_grid() const;
  const EmpiricalDistribution& reference(std::size_t index, ReferenceKind kind) const;

  /// Binary file (magic "RMTREF1") plus a JSON manifest at path + ".json".
  void save(const std::filesystem::path& path) const;
  static ReferenceLibrary load(const std::filesystem::path& path);
};

inline constexpr std::uint64_t kDefaultSketchSize = 32768;

/// 0, 0.02, ..., 1.
std::vector<double> default_delta_grid();

/// Pools eigenvector amplitudes and eigenphase spacings over samples_per_delta
/// hurwitz_sample(N, delta) draws per grid point. Work item (delta index d,
/// sample k) uses stream derive_stream_id("reflib/<d>", k) under `seed`.
ReferenceLibrary build_reference_library(Eigen::Index n, const std::vector<double>& grid,
                                         std::uint64_t samples_per_delta, std::uint64_t seed,
                                         unsigned threads = 1,
                                         std::uint64_t sketch_size = kDefaultSketchSize);

/// Evenly spaced order statistics: point i is sample floor((i + 1/2) M / K).
EmpiricalDistribution quantile_sketch(const EmpiricalDistribution& d, std::uint64_t points);

struct DeltaFitResult {
  double best_delta = 0.0;
  double distance = 0.0;
  ReferenceKind reference_kind = ReferenceKind::EigenvectorAmplitude;
  std::vector<double> distances;  // per grid point, same order as the library
};

/// Grid delta minimizing the two-sample KS distance; ties go to larger delta.
DeltaFitResult delta_fit(const EmpiricalDistribution& target, const ReferenceLibrary& lib,
                         ReferenceKind kind);

/// CSV with a single `value` column.
std::string to_value_csv(const EmpiricalDistribution& d);
/// CSV with `bin_left,bin_right,density`.
std::string to_histogram_csv(const Histogram& h);

}  // namespace rmtlab

#endif  // RMTLAB_STATS_HPP
