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

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_dim(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
  }
}

// u <- u * E^{(i,j)} touching only columns i and j (0-based).
void right_multiply_rotation(Matrix& u, Eigen::Index i, Eigen::Index j, double phi, double psi,
                             double chi) {
  const Complex eii = std::polar(std::cos(phi), psi);
  const Complex eij = std::polar(std::sin(phi), chi);
  const Complex eji = -std::conj(eij);
  const Complex ejj = std::conj(eii);
  for (Eigen::Index row = 0; row < u.rows(); ++row) {
    const Complex a = u(row, i);
    const Complex b = u(row, j);
    u(row, i) = a * eii + b * eji;
    u(row, j) = a * eij + b * ejj;
  }
}

}  // namespace

Operator gue_sample(Eigen::Index n, RngStream& rng) {
  check_dim(n);
  const double off_sigma = std::sqrt(0.5);
  Matrix h(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    h(r, r) = rng.normal();
    for (Eigen::Index c = r + 1; c < n; ++c) {
      const double re = off_sigma * rng.normal();
      const double im = off_sigma * rng.normal();
      h(r, c) = Complex(re, im);
      h(c, r) = Complex(re, -im);
    }
  }
  return Operator(std::move(h));
}

Operator cue_from_gue(Eigen::Index n, RngStream& rng) {
  const Operator h = gue_sample(n, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  Matrix u = solver.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) {
    u.col(c) *= std::polar(1.0, rng.uniform(0.0, kTwoPi));
  }
  return Operator::unitary(std::move(u));
}

Operator elementary_rotation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double phi,
                             double psi, double chi) {
  check_dim(n);
  if (i < 1 || j < 1 || i > n || j > n) {
    throw Error(ErrorCode::IndexOutOfRange, "rotation indices must lie in [1, N]");
  }
  if (i >= j) throw Error(ErrorCode::BadIndexOrder, "rotation requires i < j");
  Matrix e = Matrix::Identity(n, n);
  right_multiply_rotation(e, i - 1, j - 1, phi, psi, chi);
  return Operator::unitary(std::move(e));
}

HurwitzAngles draw_hurwitz_angles(Eigen::Index n, double delta, RngStream& rng) {
  check_dim(n);
  check_delta(delta);
  HurwitzAngles a;
  a.dim = n;
  a.delta = delta;
  a.phi.resize(static_cast<std::size_t>(n - 1));
  a.psi.resize(static_cast<std::size_t>(n - 1));
  a.chi.resize(static_cast<std::size_t>(n - 1));
  const double span = kTwoPi * delta;
  for (Eigen::Index s = 1; s < n; ++s) {
    auto& phi_s = a.phi[static_cast<std::size_t>(s - 1)];
    auto& psi_s = a.psi[static_cast<std::size_t>(s - 1)];
    phi_s.resize(static_cast<std::size_t>(s));
    psi_s.resize(static_cast<std::size_t>(s));
    for (Eigen::Index r = 0; r < s; ++r) {
      const double xi = delta * rng.uniform();
      const double root = std::pow(xi, 1.0 / static_cast<double>(2 * r + 2));
      phi_s[static_cast<std::size_t>(r)] = std::asin(delta * root);
      psi_s[static_cast<std::size_t>(r)] = span * rng.uniform();
    }
    a.chi[static_cast<std::size_t>(s - 1)] = span * rng.uniform();
  }
  a.alpha = span * rng.uniform();
  return a;
}

Operator hurwitz_unitary(const HurwitzAngles& angles) {
  const Eigen::Index n = angles.dim;
  Matrix u = Matrix::Identity(n, n);
  for (Eigen::Index s = 1; s < n; ++s) {
    const auto& phi_s = angles.phi[static_cast<std::size_t>(s - 1)];
    const auto& psi_s = angles.psi[static_cast<std::size_t>(s - 1)];
    for (Eigen::Index r = s - 1; r >= 0; --r) {
      // E^{(N-r-1, N-r)} in 1-based indices.
      const double chi = (r == 0) ? angles.chi[static_cast<std::size_t>(s - 1)] : 0.0;
      right_multiply_rotation(u, n - r - 2, n - r - 1, phi_s[static_cast<std::size_t>(r)],
                              psi_s[static_cast<std::size_t>(r)], chi);
    }
  }
  u *= std::polar(1.0, angles.alpha);
  return Operator::unitary(std::move(u));
}

Operator hurwitz_sample(Eigen::Index n, double delta, RngStream& rng) {
  const HurwitzAngles angles = draw_hurwitz_angles(n, delta, rng);
  Operator u = hurwitz_unitary(angles);
  if (delta >= 1.0) return u;
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, rng.uniform(0.0, kTwoPi));
  return Operator::unitary(phases.asDiagonal() * u.matrix());
}

Operator cpe_sample(Eigen::Index n, RngStream& rng) { return hurwitz_sample(n, 0.0, rng); }

Operator su2_haar(RngStream& rng) {
  const double xi = rng.uniform();
  const double phi = std::asin(std::sqrt(xi));
  const double psi = rng.uniform(0.0, kTwoPi);
  const double chi = rng.uniform(0.0, kTwoPi);
  Matrix e = Matrix::Identity(2, 2);
  right_multiply_rotation(e, 0, 1, phi, psi, chi);
  return Operator::unitary(std::move(e));
}

EnsembleSpec parse_ensemble_spec(std::string_view text) {
  const auto parts = split_spec(text);
  const auto& name = parts.front();
  EnsembleSpec spec;
  auto expect_fields = [&](std::size_t count) {
    if (parts.size() != count) {
      throw Error(ErrorCode::InvalidArgument, "malformed ensemble spec '" + std::string(text) + "'");
    }
  };
  if (name == "gue") {
    spec.kind = EnsembleKind::Gue;
  } else if (name == "cue-gue") {
    spec.kind = EnsembleKind::CueGue;
  } else if (name == "cue-hurwitz") {
    spec.kind = EnsembleKind::CueHurwitz;
  } else if (name == "interp") {
    spec.kind = EnsembleKind::Interp;
  } else if (name == "cpe") {
    spec.kind = EnsembleKind::Cpe;
    spec.delta = 0.0;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown ensemble '" + name + "'");
  }
  expect_fields(spec.kind == EnsembleKind::Interp ? 3 : 2);
  spec.dim = parse_int(parts[1], "N");
  check_dim(spec.dim);
  if (spec.kind == EnsembleKind::Interp) {
    spec.delta = parse_double(parts[2], "delta");
    check_delta(spec.delta);
  }
  return spec;
}

std::string to_string(const EnsembleSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case EnsembleKind::Gue: out << "gue:" << spec.dim; break;
    case EnsembleKind::CueGue: out << "cue-gue:" << spec.dim; break;
    case EnsembleKind::CueHurwitz: out << "cue-hurwitz:" << spec.dim; break;
    case EnsembleKind::Interp: out << "interp:" << spec.dim << ':' << format_double(spec.delta); break;
    case EnsembleKind::Cpe: out << "cpe:" << spec.dim; break;
  }
  return out.str();
}

Operator sample(const EnsembleSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case EnsembleKind::Gue: return gue_sample(spec.dim, rng);
    case EnsembleKind::CueGue: return cue_from_gue(spec.dim, rng);
    case EnsembleKind::CueHurwitz: return hurwitz_sample(spec.dim, 1.0, rng);
    case EnsembleKind::Interp: return hurwitz_sample(spec.dim, spec.delta, rng);
    case EnsembleKind::Cpe: return cpe_sample(spec.dim, rng);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

}  // namespace rmtlab
