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
#include <filesystem>
#include <numbers>

#include "gtest/gtest.h"
#include "json.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/io.hpp"
#include "test_support.hpp"

namespace rmtlab {
namespace {

constexpr double kPi = std::numbers::pi;

// Simpson quadrature of the surmise density (32 / pi^2) s^2 exp(-4 s^2 / pi).
double surmise_cdf_by_quadrature(double s) {
  const int steps = 2000;
  const double h = s / steps;
  auto p = [](double x) { return 32 / (kPi * kPi) * x * x * std::exp(-4 * x * x / kPi); };
  double sum = p(0) + p(s);
  for (int i = 1; i < steps; ++i) sum += (i % 2 ? 4 : 2) * p(i * h);
  return sum * h / 3;
}

// Brute force sup over a fine grid plus both sides of every sample.
double brute_ks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pts(a);
  pts.insert(pts.end(), b.begin(), b.end());
  auto ecdf = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [x](double y) { return y <= x; })) /
           static_cast<double>(v.size());
  };
  double best = 0.0;
  for (double x : pts) best = std::max(best, std::abs(ecdf(a, x) - ecdf(b, x)));
  return best;
}

TEST(ElementAmplitudes, IdentityFour) {
  const EmpiricalDistribution d = element_amplitudes(Operator::identity(4));
  ASSERT_EQ(d.size(), 16u);
  EXPECT_EQ(std::count(d.samples().begin(), d.samples().end(), 0.0), 12);
  EXPECT_EQ(std::count(d.samples().begin(), d.samples().end(), 4.0), 4);
}

TEST(ElementAmplitudes, UnitMeanForUnitary) {
  RngStream rng(1, 1);
  const Operator u = Operator::unitary(testing::qr_haar(32, rng));
  EXPECT_NEAR(element_amplitudes(u).mean(), 1.0, 1e-12);
}

TEST(EigenphaseSpacings, RootsOfUnity) {
  std::vector<double> phases;
  for (int k = 0; k < 8; ++k) phases.push_back(2 * kPi * k / 8);
  const EmpiricalDistribution s = eigenphase_spacings(phases);
  ASSERT_EQ(s.size(), 8u);
  for (double v : s.samples()) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(EigenphaseSpacings, DegenerateIdentity) {
  const EmpiricalDistribution s = eigenphase_spacings(spectral_decomposition(Operator::identity(6)));
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(std::count(s.samples().begin(), s.samples().end(), 0.0), 5);
  EXPECT_NEAR(s.samples().back(), 6.0, 1e-12);
}

TEST(EigenphaseSpacings, MeanIsOne) {
  RngStream rng(2, 2);
  EXPECT_NEAR(eigenphase_spacings(spectral_decomposition(cue_from_gue(40, rng))).mean(), 1.0, 1e-10);
}

TEST(EmpiricalDistribution, RejectsNonFinite) {
  EXPECT_THROW(EmpiricalDistribution({1.0, std::nan("")}), Error);
  EXPECT_THROW(EmpiricalDistribution({INFINITY}), Error);
}

TEST(EmpiricalDistribution, CdfAndMoments) {
  const EmpiricalDistribution d({3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(d.cdf(0.5), 0.0);
  EXPECT_EQ(d.cdf(2.0), 0.75);
  EXPECT_EQ(d.cdf(3.0), 1.0);
  EXPECT_EQ(d.mean(), 2.0);
  EXPECT_NEAR(d.standard_deviation(), std::sqrt(2.0 / 3.0), 1e-15);  // n - 1 denominator
}

TEST(EmpiricalDistribution, PooledIndependentOfOrder) {
  const EmpiricalDistribution a({1.0, 5.0});
  const EmpiricalDistribution b({3.0});
  EXPECT_EQ(EmpiricalDistribution::pooled({a, b}).samples(), EmpiricalDistribution::pooled({b, a}).samples());
}

TEST(Ks, IdenticalSamplesGiveZero) {
  RngStream rng(3, 3);
  std::vector<double> v;
  for (int i = 0; i < 500; ++i) v.push_back(rng.normal());
  EXPECT_EQ(ks_distance(EmpiricalDistribution(v), EmpiricalDistribution(v)), 0.0);
}

TEST(Ks, DisjointSupportsGiveOne) {
  EXPECT_EQ(ks_distance(EmpiricalDistribution({0.1, 0.2}), EmpiricalDistribution({5.0, 6.0, 7.0})), 1.0);
}

TEST(Ks, TwoSampleMatchesBruteForce) {
  RngStream rng(4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a;
    std::vector<double> b;
    const int na = 1 + static_cast<int>(rng.uniform() * 40);
    const int nb = 1 + static_cast<int>(rng.uniform() * 40);
    // Coarse rounding creates ties within and across samples.
    for (int i = 0; i < na; ++i) a.push_back(std::round(rng.normal() * 4) / 4);
    for (int i = 0; i < nb; ++i) b.push_back(std::round((rng.normal() + 0.3) * 4) / 4);
    EXPECT_NEAR(ks_distance(EmpiricalDistribution(a), EmpiricalDistribution(b)), brute_ks(a, b), 1e-15);
  }
}

TEST(Ks, OneSampleChecksBothSidesOfJump) {
  // One sample at 0.5 against uniform on [0,1]: sup is 0.5 on either side.
  const ReferenceCdf uniform{"uniform", [](double x) { return std::clamp(x, 0.0, 1.0); }, {}};
  EXPECT_NEAR(ks_distance(EmpiricalDistribution({0.5}), uniform), 0.5, 1e-15);
  EXPECT_NEAR(ks_distance(EmpiricalDistribution({0.25, 0.75}), uniform), 0.25, 1e-15);
}

TEST(Ks, PointMassReference) {
  EXPECT_EQ(ks_distance(EmpiricalDistribution({0.0, 0.0, 0.0}), point_mass_cdf(0.0)), 0.0);
  EXPECT_NEAR(ks_distance(EmpiricalDistribution({0.0, 1.0}), point_mass_cdf(0.0)), 0.5, 1e-15);
}

TEST(Ks, EmptySampleRejected) {
  try {
    ks_distance(EmpiricalDistribution(), exponential_cdf());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySample);
  }
}

TEST(WignerSurmise, MatchesQuadrature) {
  for (double s : {0.0, 0.1, 0.5, 1.0, 1.7, 3.0}) {
    EXPECT_NEAR(wigner_surmise_cdf(s), surmise_cdf_by_quadrature(s), 1e-10) << s;
  }
  EXPECT_EQ(wigner_surmise_cdf(-1.0), 0.0);
  EXPECT_NEAR(wigner_surmise_cdf(50.0), 1.0, 1e-15);
}

TEST(WignerSurmise, PoissonSamplesSitAtAnalyticDistance) {
  // sup |(1 - e^{-s}) - W(s)| over s, found by a fine scan.
  double sup = 0.0;
  for (double s = 0.0; s < 6.0; s += 1e-4) sup = std::max(sup, std::abs(1 - std::exp(-s) - wigner_surmise_cdf(s)));
  RngStream rng(5, 5);
  std::vector<double> v;
  for (int i = 0; i < 20000; ++i) v.push_back(-std::log1p(-rng.uniform()));
  EXPECT_NEAR(ks_distance(EmpiricalDistribution(v), wigner_surmise_reference()), sup, 0.02);
  EXPECT_LT(ks_distance(EmpiricalDistribution(v), exponential_cdf()), 0.02);
}

TEST(KsPvalue, Limits) {
  EXPECT_NEAR(ks_two_sample_pvalue(0.0, 100, 100), 1.0, 1e-12);
  EXPECT_LT(ks_two_sample_pvalue(0.5, 1000, 1000), 1e-10);
  const double p = ks_two_sample_pvalue(0.1, 200, 200);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
}

TEST(Histogram, DensityIntegratesToOne) {
  RngStream rng(6, 6);
  std::vector<double> v;
  for (int i = 0; i < 5000; ++i) v.push_back(rng.normal());
  const Histogram h = EmpiricalDistribution(v).histogram(40, -2.0, 2.0);
  ASSERT_EQ(h.edges.size(), 41u);
  double integral = 0.0;
  std::uint64_t counted = 0;
  for (std::size_t b = 0; b < 40; ++b) {
    integral += h.density[b] * (h.edges[b + 1] - h.edges[b]);
    counted += h.counts[b];
  }
  EXPECT_NEAR(integral, 1.0, 1e-12);
  EXPECT_EQ(counted + h.outside, 5000u);
  EXPECT_GT(h.outside, 0u);
}

TEST(Histogram, RejectsBadRange) {
  const EmpiricalDistribution d({1.0});
  EXPECT_THROW(d.histogram(0, 0.0, 1.0), Error);
  EXPECT_THROW(d.histogram(10, 1.0, 1.0), Error);
}

TEST(Csv, Formats) {
  EXPECT_EQ(to_value_csv(EmpiricalDistribution({0.5, 0.25})), "value\n0.25\n0.5\n");
  const std::string h = to_histogram_csv(EmpiricalDistribution({0.25, 0.75}).histogram(2, 0.0, 1.0));
  EXPECT_EQ(h, "bin_left,bin_right,density\n0,0.5,1\n0.5,1,1\n");
}

TEST(ReferenceKind, RoundTrip) {
  for (auto kind : {ReferenceKind::EigenvectorAmplitude, ReferenceKind::EigenphaseSpacing}) {
    EXPECT_EQ(parse_reference_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_reference_kind("elements"), Error);
}

TEST(QuantileSketch, ErrorBoundedByResolution) {
  RngStream rng(7, 7);
  std::vector<double> v;
  for (int i = 0; i < 30000; ++i) v.push_back(rng.normal());
  const EmpiricalDistribution full(v);
  for (std::uint64_t k : {100u, 1000u, 4096u}) {
    const EmpiricalDistribution sk = quantile_sketch(full, k);
    EXPECT_EQ(sk.size(), k);
    EXPECT_LE(ks_distance(full, sk), 1.0 / static_cast<double>(k) + 1e-12) << k;
  }
  // Smaller inputs pass through unchanged.
  EXPECT_EQ(quantile_sketch(full, 50000).samples(), full.samples());
}

ReferenceLibrary synthetic_library(const std::vector<double>& centers) {
  ReferenceLibrary lib;
  lib.dim = 4;
  lib.samples_per_delta = 1;
  lib.seed = 0;
  lib.sketch_size = 1000;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    std::vector<double> v;
    for (int k = 0; k < 100; ++k) v.push_back(centers[i] + k * 0.01);
    ReferenceLibrary::Entry e;
    e.delta = static_cast<double>(i) / static_cast<double>(centers.size() - 1);
    e.eigvec_pooled = e.spacing_pooled = 100;
    e.eigenvector = EmpiricalDistribution(v);
    e.spacing = EmpiricalDistribution(v);
    lib.entries.push_back(std::move(e));
  }
  return lib;
}

TEST(DeltaFit, PicksClosestDistribution) {
  const ReferenceLibrary lib = synthetic_library({0.0, 0.4, 0.8, 1.2, 1.6});
  std::vector<double> target;
  for (int k = 0; k < 100; ++k) target.push_back(0.82 + k * 0.01);
  const DeltaFitResult r = delta_fit(EmpiricalDistribution(target), lib, ReferenceKind::EigenvectorAmplitude);
  EXPECT_EQ(r.best_delta, 0.5);
  ASSERT_EQ(r.distances.size(), 5u);
  EXPECT_EQ(r.distance, *std::min_element(r.distances.begin(), r.distances.end()));
}

TEST(DeltaFit, TiesGoToLargerDelta) {
  // Identical references everywhere: every distance ties.
  const ReferenceLibrary lib = synthetic_library({0.5, 0.5, 0.5});
  const DeltaFitResult r = delta_fit(EmpiricalDistribution({0.0}), lib, ReferenceKind::EigenphaseSpacing);
  EXPECT_EQ(r.best_delta, 1.0);
}

TEST(DeltaFit, EmptyLibraryRejected) {
  ReferenceLibrary lib;
  EXPECT_THROW(delta_fit(EmpiricalDistribution({1.0}), lib, ReferenceKind::EigenphaseSpacing), Error);
}

TEST(ReferenceLibrary, SaveLoadBitExact) {
  const auto dir = std::filesystem::temp_directory_path() / "rmtlab_reflib_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const ReferenceLibrary lib = build_reference_library(8, {0.0, 0.5, 1.0}, 3, 42, 2, 64);
  lib.save(dir / "lib.bin");
  const ReferenceLibrary back = ReferenceLibrary::load(dir / "lib.bin");
  EXPECT_EQ(back.dim, 8u);
  EXPECT_EQ(back.samples_per_delta, 3u);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.delta_grid(), lib.delta_grid());
  for (std::size_t i = 0; i < lib.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].eigenvector.samples(), lib.entries[i].eigenvector.samples());
    EXPECT_EQ(back.entries[i].spacing.samples(), lib.entries[i].spacing.samples());
    EXPECT_EQ(back.entries[i].eigvec_pooled, 3u * 64u);
  }
  EXPECT_EQ(read_file(dir / "lib.bin").substr(0, 7), "RMTREF1");
  const auto manifest = nlohmann::json::parse(read_file(dir / "lib.bin.json"));
  EXPECT_EQ(manifest["dim"], 8);
  std::filesystem::remove_all(dir);
}

TEST(ReferenceLibrary, BuildIsDeterministicAcrossThreadCounts) {
  const ReferenceLibrary a = build_reference_library(8, {0.2, 0.9}, 4, 7, 1, 1000);
  const ReferenceLibrary b = build_reference_library(8, {0.2, 0.9}, 4, 7, 3, 1000);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].eigenvector.samples(), b.entries[i].eigenvector.samples());
    EXPECT_EQ(a.entries[i].spacing.samples(), b.entries[i].spacing.samples());
  }
}

TEST(ReferenceLibrary, LoadRejectsCorruptFile) {
  const auto path = std::filesystem::temp_directory_path() / "rmtlab_bad_reflib.bin";
  write_file_atomic(path, "RMTREF1\0garbage");
  EXPECT_THROW(ReferenceLibrary::load(path), Error);
  std::filesystem::remove(path);
}

TEST(DefaultGrid, FiftyOnePoints) {
  const auto grid = default_delta_grid();
  ASSERT_EQ(grid.size(), 51u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 1.0);
  EXPECT_NEAR(grid[49], 0.98, 1e-15);
}

}  // namespace
}  // namespace rmtlab
