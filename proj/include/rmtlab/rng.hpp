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

#ifndef RMTLAB_RNG_HPP
#define RMTLAB_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rmtlab {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed is the key; the 64-bit stream id occupies the upper half of
/// the 128-bit counter and the block index the lower half. Output depends only
/// on (seed, stream_id, position), so draws are reproducible on every platform
/// and streams with different ids never overlap.
///
/// Satisfies std::uniform_random_bit_generator, but all library samplers use
/// uniform() / normal() below rather than <random> distributions, whose output
/// is implementation-defined.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  /// Raw Philox4x32-10 block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> counter,
                                                   std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stream id for one work item of an experiment: hash(tag, index).
std::uint64_t derive_stream_id(std::string_view tag, std::uint64_t index) noexcept;

inline RngStream make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  return RngStream(seed, derive_stream_id(tag, index));
}

}  // namespace rmtlab

#endif  // RMTLAB_RNG_HPP
