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

#include "rmtlab/chaosmaps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rmtlab/parse.hpp"

namespace rmtlab {
namespace {

constexpr double kPi = std::numbers::pi;

void check_map_dim(Eigen::Index n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "map dimension must be >= 2");
}

Vector cosine_kick(Eigen::Index n, double gamma, double shift) {
  const double nd = static_cast<double>(n);
  Vector d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j) = std::polar(1.0, nd * gamma * std::cos(2.0 * kPi * (static_cast<double>(j) + shift) / nd));
  }
  return d;
}

}  // namespace

Operator sawtooth(Eigen::Index n, double k) {
  check_map_dim(n);
  const double nd = static_cast<double>(n);
  const double two_n = 2.0 * nd;
  const Complex prefactor = std::polar(1.0 / std::sqrt(nd), -kPi / 4.0);
  Matrix u(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const double m2 = static_cast<double>(col * col);
    // Exponents are reduced mod 2N before multiplying by pi/N.
    const double kick = kPi * std::fmod(k * m2, two_n) / nd;
    for (Eigen::Index row = 0; row < n; ++row) {
      const Eigen::Index diff = row - col;
      const double free = kPi * static_cast<double>((diff * diff) % (2 * n)) / nd;
      u(row, col) = prefactor * std::polar(1.0, kick + free);
    }
  }
  return Operator::unitary(std::move(u));
}

Operator harper(Eigen::Index n, double gamma, GridConvention grid) {
  check_map_dim(n);
  const bool half = grid == GridConvention::HalfInteger;
  const double shift = half ? 0.5 : 0.0;
  const Operator f = dft(n, half);
  const Vector kick = cosine_kick(n, gamma, shift);
  Matrix u = kick.asDiagonal() * (f.matrix().adjoint() * (kick.asDiagonal() * f.matrix()));
  return Operator::unitary(std::move(u));
}

Operator baker(Eigen::Index n, GridConvention grid) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::OddDimension, "baker's map needs even N >= 2");
  const bool half = grid == GridConvention::HalfInteger;
  const Eigen::Index h = n / 2;
  const Operator g_half = dft(h, half);
  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(h, h) = g_half.matrix();
  block.bottomRightCorner(h, h) = g_half.matrix();
  Matrix u = dft(n, half).matrix().adjoint() * block;
  return Operator::unitary(std::move(u));
}

MapSpec parse_map_spec(std::string_view text) {
  const auto parts = split_spec(text);
  MapSpec spec;
  const auto& name = parts.front();
  std::size_t expected = 3;
  if (name == "sawtooth") {
    spec.kind = MapKind::Sawtooth;
  } else if (name == "harper") {
    spec.kind = MapKind::Harper;
  } else if (name == "baker") {
    spec.kind = MapKind::Baker;
    expected = 2;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown map '" + name + "'");
  }
  if (parts.size() != expected) {
    throw Error(ErrorCode::InvalidArgument, "malformed map spec '" + std::string(text) + "'");
  }
  spec.dim = parse_int(parts[1], "N");
  if (expected == 3) spec.parameter = parse_double(parts[2], "map parameter");
  check_map_dim(spec.dim);
  return spec;
}

std::string to_string(const MapSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case MapKind::Sawtooth: out << "sawtooth:" << spec.dim << ':' << format_double(spec.parameter); break;
    case MapKind::Harper: out << "harper:" << spec.dim << ':' << format_double(spec.parameter); break;
    case MapKind::Baker: out << "baker:" << spec.dim; break;
  }
  return out.str();
}

Operator build_map(const MapSpec& spec) {
  switch (spec.kind) {
    case MapKind::Sawtooth: return sawtooth(spec.dim, spec.parameter);
    case MapKind::Harper: return harper(spec.dim, spec.parameter);
    case MapKind::Baker: return baker(spec.dim);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown map kind");
}

}  // namespace rmtlab
