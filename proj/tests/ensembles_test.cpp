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

#include "rmtlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "rmtlab/stats.hpp"
#include "test_support.hpp"

namespace rmtlab {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Gue, SingleEntryIsReal) {
  RngStream rng(1, 1);
  const Operator h = gue_sample(1, rng);
  EXPECT_EQ(h(0, 0).imag(), 0.0);
}

TEST(Gue, ExactlyHermitian) {
  for (int n : {2, 5, 16}) {
    RngStream rng(2, static_cast<std::uint64_t>(n));
    const Operator h = gue_sample(n, rng);
    EXPECT_EQ(hermiticity_residual(h.matrix()), 0.0);
  }
}

TEST(Gue, EntryVariances) {
  RngStream rng(3, 3);
  double diag = 0.0;
  double off_re = 0.0;
  double off_im = 0.0;
  int nd = 0;
  int no = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Operator h = gue_sample(16, rng);
    for (int r = 0; r < 16; ++r) {
      diag += std::norm(h(r, r));
      ++nd;
      for (int c = r + 1; c < 16; ++c) {
        off_re += h(r, c).real() * h(r, c).real();
        off_im += h(r, c).imag() * h(r, c).imag();
        ++no;
      }
    }
  }
  EXPECT_NEAR(diag / nd, 1.0, 0.05);
  EXPECT_NEAR(off_re / no, 0.5, 0.02);
  EXPECT_NEAR(off_im / no, 0.5, 0.02);
}

TEST(CueFromGue, OneByOneIsAPhase) {
  RngStream rng(4, 4);
  const Operator u = cue_from_gue(1, rng);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(CueFromGue, UnitaryWithinTolerance) {
  for (int n : {2, 7, 64}) {
    RngStream rng(5, static_cast<std::uint64_t>(n));
    const Operator u = cue_from_gue(n, rng);
    EXPECT_TRUE(u.is_unitary());
    EXPECT_LT(unitarity_residual(u.matrix()), 1e-10 * n);
  }
}

TEST(ElementaryRotation, ZeroAnglesGiveIdentity) {
  const Operator e = elementary_rotation(5, 2, 4, 0.0, 0.0, 0.0);
  EXPECT_EQ(e.matrix(), Matrix::Identity(5, 5));
}

TEST(ElementaryRotation, QuarterTurn) {
  const Operator e = elementary_rotation(2, 1, 2, kPi / 2, 0.0, 0.0);
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_LT(testing::max_abs_diff(e.matrix(), expected), 1e-15);
}

TEST(ElementaryRotation, EntriesAndUnitDeterminant) {
  RngStream rng(6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const double phi = rng.uniform(0, kPi / 2);
    const double psi = rng.uniform(0, 2 * kPi);
    const double chi = rng.uniform(0, 2 * kPi);
    const Operator e = elementary_rotation(4, 2, 4, phi, psi, chi);
    EXPECT_NEAR(std::abs(e(1, 1) - std::polar(std::cos(phi), psi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e(1, 3) - std::polar(std::sin(phi), chi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e(3, 1) + std::polar(std::sin(phi), -chi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e(3, 3) - std::polar(std::cos(phi), -psi)), 0.0, 1e-15);
    EXPECT_EQ(e(0, 0), Complex(1.0));
    EXPECT_EQ(e(1, 2), Complex(0.0));
    EXPECT_NEAR(std::abs(e.matrix().determinant() - 1.0), 0.0, 1e-12);
  }
}

TEST(ElementaryRotation, IndexErrors) {
  EXPECT_THROW(elementary_rotation(3, 0, 2, 0, 0, 0), Error);
  EXPECT_THROW(elementary_rotation(3, 1, 4, 0, 0, 0), Error);
  try {
    elementary_rotation(3, 2, 2, 0, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadIndexOrder);
  }
}

TEST(HurwitzAngles, IntervalsFollowDelta) {
  for (double delta : {0.0, 0.3, 0.9, 1.0}) {
    RngStream rng(7, 7);
    const HurwitzAngles a = draw_hurwitz_angles(12, delta, rng);
    EXPECT_LE(a.alpha, 2 * kPi * delta);
    for (std::size_t s = 0; s < a.phi.size(); ++s) {
      ASSERT_EQ(a.phi[s].size(), s + 1);
      EXPECT_GE(a.chi[s], 0.0);
      EXPECT_LE(a.chi[s], 2 * kPi * delta);
      for (std::size_t r = 0; r < a.phi[s].size(); ++r) {
        EXPECT_GE(a.phi[s][r], 0.0);
        // sin(phi) = delta * xi^{1/(2r+2)} with xi < delta.
        EXPECT_LE(std::sin(a.phi[s][r]), delta * std::pow(delta, 1.0 / (2.0 * r + 2.0)) + 1e-15);
        EXPECT_LE(a.psi[s][r], 2 * kPi * delta);
      }
    }
  }
}

TEST(HurwitzSample, DeltaZeroIsDiagonalPhases) {
  RngStream rng(8, 8);
  const Operator u = hurwitz_sample(16, 0.0, rng);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      if (r == c) {
        EXPECT_NEAR(std::abs(u(r, c)), 1.0, 1e-15);
      } else {
        EXPECT_EQ(u(r, c), Complex(0.0));
      }
    }
  }
}

TEST(HurwitzSample, MatchesExplicitElementaryProduct) {
  // Oracle: multiply dense E^{(i,j)} matrices in the documented order.
  const int n = 5;
  RngStream rng(9, 9);
  const HurwitzAngles a = draw_hurwitz_angles(n, 1.0, rng);
  Matrix product = Matrix::Identity(n, n);
  for (int s = 1; s < n; ++s) {
    Matrix composite = Matrix::Identity(n, n);
    for (int r = s - 1; r >= 0; --r) {
      const double chi = r == 0 ? a.chi[static_cast<std::size_t>(s - 1)] : 0.0;
      composite = composite * elementary_rotation(n, n - r - 1, n - r, a.phi[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)],
                                                  a.psi[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)], chi)
                                  .matrix();
    }
    product = product * composite;
  }
  product *= std::polar(1.0, a.alpha);
  EXPECT_LT(testing::max_abs_diff(hurwitz_unitary(a).matrix(), product), 1e-14);
}

TEST(HurwitzSample, UnitaryAcrossDelta) {
  for (double delta : {0.0, 0.1, 0.5, 0.98, 1.0}) {
    RngStream rng(10, 10);
    const Operator u = hurwitz_sample(32, delta, rng);
    EXPECT_TRUE(u.is_unitary());
    EXPECT_LT(unitarity_residual(u.matrix()), 1e-10 * 32);
  }
}

TEST(HurwitzSample, DeterministicForSameStream) {
  RngStream a(11, 3);
  RngStream b(11, 3);
  EXPECT_EQ(hurwitz_sample(16, 0.7, a), hurwitz_sample(16, 0.7, b));
  RngStream c(11, 3);
  RngStream d(11, 3);
  EXPECT_EQ(cue_from_gue(16, c), cue_from_gue(16, d));
}

TEST(Su2Haar, UnitaryWithUnitDeterminant) {
  RngStream rng(12, 12);
  for (int i = 0; i < 1000; ++i) {
    const Operator e = su2_haar(rng);
    EXPECT_LT(unitarity_residual(e.matrix()), 1e-14);
    EXPECT_NEAR(std::abs(e.matrix().determinant() - 1.0), 0.0, 1e-12);
  }
}

TEST(Su2Haar, AmplitudeStatistics) {
  RngStream rng(13, 13);
  std::vector<double> diag;
  double off = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const Operator e = su2_haar(rng);
    diag.push_back(std::norm(e(0, 0)));
    off += std::norm(e(0, 1));
  }
  // |E_11|^2 = cos^2 phi = 1 - xi, uniform on [0, 1].
  const ReferenceCdf uniform{"uniform", [](double x) { return std::clamp(x, 0.0, 1.0); }, {}};
  EXPECT_LT(ks_distance(EmpiricalDistribution(diag), uniform), 1.63 / std::sqrt(draws));
  EXPECT_NEAR(off / draws, 0.5, 0.01);
}

TEST(EnsembleSpec, ParsesAllForms) {
  EXPECT_EQ(parse_ensemble_spec("gue:8").kind, EnsembleKind::Gue);
  EXPECT_EQ(parse_ensemble_spec("cue-gue:8").dim, 8);
  EXPECT_EQ(parse_ensemble_spec("cue-hurwitz:4").kind, EnsembleKind::CueHurwitz);
  const EnsembleSpec interp = parse_ensemble_spec("interp:256:0.98");
  EXPECT_EQ(interp.kind, EnsembleKind::Interp);
  EXPECT_EQ(interp.delta, 0.98);
  EXPECT_EQ(to_string(interp), "interp:256:0.98");
  const EnsembleSpec cpe = parse_ensemble_spec("cpe:16");
  EXPECT_EQ(cpe.delta, 0.0);
  for (const char* bad : {"gue", "gue:x", "interp:4", "interp:4:1.5", "foo:4", "cpe:0", "gue:4:1"}) {
    EXPECT_THROW(parse_ensemble_spec(bad), Error) << bad;
  }
}

TEST(EnsembleSpec, CpeEqualsInterpAtZero) {
  RngStream a(14, 1);
  RngStream b(14, 1);
  EXPECT_EQ(sample(parse_ensemble_spec("cpe:8"), a), sample(parse_ensemble_spec("interp:8:0"), b));
}

}  // namespace
}  // namespace rmtlab
