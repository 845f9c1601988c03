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

// Quantized sawtooth, Harper and baker's maps as dense unitaries.

#ifndef RMTLAB_CHAOSMAPS_HPP
#define RMTLAB_CHAOSMAPS_HPP

#include <string>
#include <string_view>

#include "rmtlab/qcore.hpp"

namespace rmtlab {

/// Grid offset used by the discrete Fourier transforms inside a map.
/// Integer: q, p = 0..N-1. HalfInteger: q, p = 1/2..N-1/2 (antiperiodic).
enum class GridConvention { Integer, HalfInteger };

/// U[n][m] = e^{-i pi/4} N^{-1/2} e^{i k pi m^2 / N} e^{i pi (n-m)^2 / N},
/// n, m = 0..N-1. Unitarity is checked numerically.
Operator sawtooth(Eigen::Index n, double k);

/// D_q F^dagger D_p F with D = diag(e^{i N gamma cos(2 pi (j+s)/N)}).
Operator harper(Eigen::Index n, double gamma, GridConvention grid = GridConvention::Integer);

/// Balazs-Voros baker's map G_N^dagger (G_{N/2} (+) G_{N/2}), G_M the
/// M-point DFT on the chosen grid. Requires N even.
Operator baker(Eigen::Index n, GridConvention grid = GridConvention::Integer);

enum class MapKind { Sawtooth, Harper, Baker };

struct MapSpec {
  MapKind kind = MapKind::Sawtooth;
  Eigen::Index dim = 2;
  double parameter = 0.0;
};

/// Parses "sawtooth:N:k", "harper:N:gamma", "baker:N".
MapSpec parse_map_spec(std::string_view text);
std::string to_string(const MapSpec& spec);
Operator build_map(const MapSpec& spec);

}  // namespace rmtlab

#endif  // RMTLAB_CHAOSMAPS_HPP
