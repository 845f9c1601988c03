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

// Random matrix samplers: GUE, CUE (GUE eigenvectors and Hurwitz
// parameterization), CPE, the delta-interpolating ensembles, and Haar SU(2).

#ifndef RMTLAB_ENSEMBLES_HPP
#define RMTLAB_ENSEMBLES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "rmtlab/qcore.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

/// Hermitian matrix: real N(0,1) diagonal, complex off-diagonal with
/// independent N(0,1/2) real and imaginary parts.
Operator gue_sample(Eigen::Index n, RngStream& rng);

/// GUE eigenvectors as columns, each multiplied by an independent uniform phase.
Operator cue_from_gue(Eigen::Index n, RngStream& rng);

/// Elementary unitary E^{(i,j)}(phi, psi, chi), 1-based 1 <= i < j <= N.
/// The (i,j) block is [[e^{i psi} cos phi, e^{i chi} sin phi],
///                     [-e^{-i chi} sin phi, e^{-i psi} cos phi]].
Operator elementary_rotation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double phi,
                             double psi, double chi);

/// Euler angles of the Hurwitz construction.
///
/// Composite rotation s (1..N-1) is the ordered product, left to right, of
/// E^{(N-r-1, N-r)}(phi_rs, psi_rs, chi) for r = s-1 down to 0, where chi is
/// chi_s for r = 0 and zero otherwise. Storage is phi[s-1][r], psi[s-1][r],
/// chi[s-1].
struct HurwitzAngles {
  Eigen::Index dim = 1;
  double delta = 1.0;
  std::vector<std::vector<double>> phi;
  std::vector<std::vector<double>> psi;
  std::vector<double> chi;
  double alpha = 0.0;
};

/// Draws angles on the constricted intervals: psi, chi, alpha uniform on
/// [0, 2 pi delta); xi_rs uniform on [0, delta) and
/// phi_rs = asin(delta * xi_rs^{1/(2r+2)}). delta = 1 is the Haar case.
HurwitzAngles draw_hurwitz_angles(Eigen::Index n, double delta, RngStream& rng);

/// e^{i alpha} E_1 E_2 ... E_{N-1} for the given angles.
Operator hurwitz_unitary(const HurwitzAngles& angles);

/// Interpolating-ensemble sample. For delta < 1 the Hurwitz product is
/// left-multiplied by diag(e^{i theta_k}), theta_k uniform on [0, 2 pi);
/// delta = 1 returns the plain Hurwitz CUE matrix.
Operator hurwitz_sample(Eigen::Index n, double delta, RngStream& rng);

/// Circular Poisson ensemble: hurwitz_sample at delta = 0.
Operator cpe_sample(Eigen::Index n, RngStream& rng);

/// Haar-random SU(2): the r = 0 block with psi, chi uniform and
/// phi = asin(sqrt(xi)).
Operator su2_haar(RngStream& rng);

enum class EnsembleKind { Gue, CueGue, CueHurwitz, Interp, Cpe };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::CueGue;
  Eigen::Index dim = 1;
  double delta = 1.0;
};

/// Parses "gue:N", "cue-gue:N", "cue-hurwitz:N", "interp:N:delta", "cpe:N".
EnsembleSpec parse_ensemble_spec(std::string_view text);
std::string to_string(const EnsembleSpec& spec);

Operator sample(const EnsembleSpec& spec, RngStream& rng);

}  // namespace rmtlab

#endif  // RMTLAB_ENSEMBLES_HPP
