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

// Randomized invariant checks. Each suite draws its cases from its own
// stream so failures can be reproduced by case index.

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "rmtlab/chaosmaps.hpp"
#include "rmtlab/circuits.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/entangle.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/stats.hpp"
#include "test_support.hpp"

namespace rmtlab {
namespace {

constexpr int kCases = 1000;
constexpr std::uint64_t kSeed = 20260101;

int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

// Random unitary of dimension <= 16 from one of the library's generators.
Operator random_unitary(RngStream& rng, int dim) {
  switch (uniform_int(rng, 0, 4)) {
    case 0: return cue_from_gue(dim, rng);
    case 1: return hurwitz_sample(dim, rng.uniform(), rng);
    case 2: return cpe_sample(dim, rng);
    case 3: {
      const int n = log2_exact(static_cast<std::uint64_t>(dim));
      if (n >= 2) return pseudo_random_operator({n, uniform_int(rng, 0, 6)}, rng);
      return hurwitz_sample(dim, 1.0, rng);
    }
    default:
      if (dim < 2) return cpe_sample(dim, rng);
      if (dim % 2 == 0) return harper(dim, rng.uniform(0, 2));
      return sawtooth(dim, rng.uniform(-2, 2));
  }
}

int power_of_two_dim(RngStream& rng, int min_qubits = 1) {
  return 1 << uniform_int(rng, min_qubits, 4);
}

TEST(Property, GeneratedOperatorsAreUnitary) {
  RngStream rng = make_stream(kSeed, "prop/unitary", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = uniform_int(rng, 1, 16);
    const Operator u = random_unitary(rng, dim);
    ASSERT_LE(unitarity_residual(u.matrix()), 1e-10 * dim) << "case " << i;
  }
}

TEST(Property, ApplyPreservesNorm) {
  RngStream rng = make_stream(kSeed, "prop/norm", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = power_of_two_dim(rng);
    const int n = log2_exact(static_cast<std::uint64_t>(dim));
    const Operator u = random_unitary(rng, dim);
    const StateVector psi = testing::random_state(n, rng);
    ASSERT_NEAR(apply(u, psi).amplitudes().norm(), 1.0, 1e-12) << "case " << i;
  }
}

TEST(Property, SpectralReconstruction) {
  RngStream rng = make_stream(kSeed, "prop/spectral", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = uniform_int(rng, 1, 16);
    const Operator u = random_unitary(rng, dim);
    const SpectralData s = spectral_decomposition(u);
    Vector d(dim);
    for (int k = 0; k < dim; ++k) d(k) = std::polar(1.0, s.phases[static_cast<std::size_t>(k)]);
    ASSERT_LT(testing::max_abs_diff(s.vectors * d.asDiagonal() * s.vectors.adjoint(), u.matrix()), 1e-9) << "case " << i;
    ASSERT_LT(testing::max_abs_diff(s.vectors.adjoint() * s.vectors, Matrix::Identity(dim, dim)), 1e-10) << "case " << i;
    ASSERT_TRUE(std::is_sorted(s.phases.begin(), s.phases.end()));
  }
}

TEST(Property, SpacingAndAmplitudeMeansAreOne) {
  RngStream rng = make_stream(kSeed, "prop/means", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = uniform_int(rng, 2, 16);
    const Operator u = random_unitary(rng, dim);
    ASSERT_NEAR(eigenphase_spacings(spectral_decomposition(u)).mean(), 1.0, 1e-12) << "case " << i;
    ASSERT_NEAR(element_amplitudes(u).mean(), 1.0, 1e-12) << "case " << i;
  }
}

TEST(Property, PurityMatchesDensePartialTrace) {
  RngStream rng = make_stream(kSeed, "prop/purity", 0);
  for (int i = 0; i < kCases; ++i) {
    const int n = uniform_int(rng, 3, 4);
    const StateVector psi = testing::random_state(n, rng);
    const int j = uniform_int(rng, 1, n);
    ASSERT_NEAR(qubit_purity(psi, j), testing::dense_partial_trace_purity(psi.amplitudes(), n, j), 1e-12)
        << "case " << i;
  }
}

TEST(Property, QBoundedAndLocallyInvariant) {
  RngStream rng = make_stream(kSeed, "prop/q", 0);
  for (int i = 0; i < kCases; ++i) {
    const int n = uniform_int(rng, 2, 4);
    const StateVector psi = testing::random_state(n, rng);
    const double q = meyer_wallach_q(psi);
    ASSERT_GE(q, -1e-15) << "case " << i;
    ASSERT_LE(q, 1.0 + 1e-15) << "case " << i;
    ASSERT_NEAR(meyer_wallach_q(apply(rotation_layer(n, rng), psi)), q, 1e-10) << "case " << i;
    const StateVector phased = StateVector::normalized(n, psi.amplitudes() * std::polar(1.0, rng.uniform(0, 6.28)));
    ASSERT_NEAR(meyer_wallach_q(phased), q, 1e-12) << "case " << i;
  }
}

TEST(Property, ProductStatesHaveZeroQ) {
  RngStream rng = make_stream(kSeed, "prop/product", 0);
  for (int i = 0; i < kCases; ++i) {
    const int n = uniform_int(rng, 2, 4);
    const StateVector psi = apply(rotation_layer(n, rng), StateVector::basis(n, 0));
    ASSERT_NEAR(meyer_wallach_q(psi), 0.0, 1e-10) << "case " << i;
  }
}

TEST(Property, ColumnQEqualsStateEvolution) {
  RngStream rng = make_stream(kSeed, "prop/columns", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = power_of_two_dim(rng, 2);
    const int n = log2_exact(static_cast<std::uint64_t>(dim));
    const Operator u = random_unitary(rng, dim);
    double sum = 0.0;
    for (int b = 0; b < dim; ++b) sum += meyer_wallach_q(apply(u, StateVector::basis(n, static_cast<std::uint64_t>(b))));
    ASSERT_NEAR(average_q_over_basis(u, 1), sum / dim, 1e-12) << "case " << i;
  }
}

TEST(Property, TwoSampleKsSymmetricAndTriangular) {
  RngStream rng = make_stream(kSeed, "prop/ks", 0);
  auto draw = [&rng] {
    std::vector<double> v(static_cast<std::size_t>(uniform_int(rng, 1, 60)));
    const double shift = rng.normal();
    for (auto& x : v) x = std::round((rng.normal() + shift) * 8) / 8;
    return EmpiricalDistribution(v);
  };
  for (int i = 0; i < kCases; ++i) {
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    const double ab = ks_distance(a, b);
    ASSERT_EQ(ab, ks_distance(b, a)) << "case " << i;
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0);
    ASSERT_LE(ks_distance(a, c), ab + ks_distance(b, c) + 1e-12) << "case " << i;
  }
}

TEST(Property, SerializationReplaysBytes) {
  RngStream rng = make_stream(kSeed, "prop/io", 0);
  for (int i = 0; i < kCases; ++i) {
    const int dim = uniform_int(rng, 1, 16);
    const Operator u = random_unitary(rng, dim);
    const std::string bin = to_binary(u);
    ASSERT_EQ(to_binary(operator_from_binary(bin)), bin) << "case " << i;
    const std::string js = to_json(u);
    ASSERT_EQ(to_json(operator_from_json(js)), js) << "case " << i;
  }
}

TEST(Property, SamplersReplayFromStreamId) {
  for (int i = 0; i < kCases; ++i) {
    RngStream a = make_stream(kSeed, "prop/replay", static_cast<std::uint64_t>(i));
    RngStream b = make_stream(kSeed, "prop/replay", static_cast<std::uint64_t>(i));
    const int dim = uniform_int(a, 1, 16);
    uniform_int(b, 1, 16);
    ASSERT_EQ(to_binary(random_unitary(a, dim)), to_binary(random_unitary(b, dim))) << "case " << i;
  }
}

// Spot checks at the production dimension.

TEST(PropertyAt256, UnitarityReconstructionAndQ) {
  RngStream rng = make_stream(kSeed, "prop/256", 0);
  const std::vector<Operator> ops = {cue_from_gue(256, rng), hurwitz_sample(256, 0.5, rng),
                                     pseudo_random_operator({8, 4}, rng), sawtooth(256, 1.5),
                                     harper(256, 1.0), baker(256)};
  for (const Operator& u : ops) {
    EXPECT_LE(unitarity_residual(u.matrix()), 1e-10 * 256);
    const SpectralData s = spectral_decomposition(u);
    Vector d(256);
    for (int k = 0; k < 256; ++k) d(k) = std::polar(1.0, s.phases[static_cast<std::size_t>(k)]);
    EXPECT_LT(testing::max_abs_diff(s.vectors * d.asDiagonal() * s.vectors.adjoint(), u.matrix()), 1e-9);
    EXPECT_NEAR(eigenphase_spacings(s).mean(), 1.0, 1e-12);
    for (double q : column_q(u.matrix(), 8)) {
      EXPECT_GE(q, -1e-15);
      EXPECT_LE(q, 1.0 + 1e-15);
    }
  }
}

TEST(PropertyAt256, LocalInvarianceAndOracle) {
  RngStream rng = make_stream(kSeed, "prop/256", 1);
  for (int i = 0; i < 5; ++i) {
    const StateVector psi = testing::random_state(8, rng);
    EXPECT_NEAR(meyer_wallach_q(apply(rotation_layer(8, rng), psi)), meyer_wallach_q(psi), 1e-10);
    const int j = uniform_int(rng, 1, 8);
    EXPECT_NEAR(qubit_purity(psi, j), testing::dense_partial_trace_purity(psi.amplitudes(), 8, j), 1e-12);
  }
}

}  // namespace
}  // namespace rmtlab
