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

#include "rmtlab/io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "binary_io.hpp"
#include "json.hpp"

namespace rmtlab {
namespace {

using nlohmann::json;

constexpr std::string_view kOperatorMagic = "RMTL";
constexpr std::string_view kStateMagic = "RMTV";

json complex_array(const Complex* data, std::size_t count) {
  json arr = json::array();
  for (std::size_t i = 0; i < count; ++i) arr.push_back({data[i].real(), data[i].imag()});
  return arr;
}

Complex parse_pair(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorCode::Format, "expected [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, e.what());
  }
}

// Row-major copy of a column-major Eigen matrix.
std::vector<Complex> row_major(const Matrix& m) {
  std::vector<Complex> out(static_cast<std::size_t>(m.size()));
  Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out.data(), m.rows(), m.cols()) = m;
  return out;
}

Operator finish_operator(Matrix m, bool want_unitary) {
  if (!want_unitary) return Operator(std::move(m));
  return Operator::unitary(std::move(m));
}

}  // namespace

std::string to_json(const Operator& u) {
  const auto entries = row_major(u.matrix());
  json j;
  j["type"] = "operator";
  j["dim"] = u.dim();
  j["unitary"] = u.is_unitary();
  j["entries"] = complex_array(entries.data(), entries.size());
  return j.dump();
}

std::string to_json(const StateVector& psi) {
  json j;
  j["type"] = "state";
  j["n_qubits"] = psi.n_qubits();
  j["amplitudes"] = complex_array(psi.amplitudes().data(), static_cast<std::size_t>(psi.dim()));
  return j.dump();
}

Operator operator_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (j.value("type", "") != "operator" || !j.contains("dim") || !j.contains("entries")) {
    throw Error(ErrorCode::Format, "not an operator document");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  const auto& entries = j["entries"];
  if (dim < 1 || !entries.is_array() || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw Error(ErrorCode::Format, "operator entry count must be dim^2");
  }
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = parse_pair(entries[static_cast<std::size_t>(r * dim + c)]);
  }
  return finish_operator(std::move(m), j.value("unitary", false));
}

StateVector state_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (j.value("type", "") != "state" || !j.contains("n_qubits") || !j.contains("amplitudes")) {
    throw Error(ErrorCode::Format, "not a state document");
  }
  const int n = j["n_qubits"].get<int>();
  const auto& amps = j["amplitudes"];
  if (!amps.is_array()) throw Error(ErrorCode::Format, "amplitudes must be an array");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_pair(amps[i]);
  return StateVector(n, std::move(v));
}

std::string to_binary(const Operator& u) {
  std::ostringstream out(std::ios::binary);
  out.write(kOperatorMagic.data(), kOperatorMagic.size());
  detail::write_pod(out, static_cast<std::uint32_t>(u.dim()));
  const auto entries = row_major(u.matrix());
  detail::write_array(out, reinterpret_cast<const double*>(entries.data()), 2 * entries.size());
  return out.str();
}

std::string to_binary(const StateVector& psi) {
  std::ostringstream out(std::ios::binary);
  out.write(kStateMagic.data(), kStateMagic.size());
  detail::write_pod(out, static_cast<std::uint32_t>(psi.dim()));
  detail::write_array(out, reinterpret_cast<const double*>(psi.amplitudes().data()),
                      2 * static_cast<std::size_t>(psi.dim()));
  return out.str();
}

Operator operator_from_binary(std::string_view bytes) {
  std::istringstream in(std::string(bytes), std::ios::binary);
  detail::expect_magic(in, kOperatorMagic);
  const auto dim = detail::read_pod<std::uint32_t>(in);
  if (dim < 1) throw Error(ErrorCode::Format, "dim must be >= 1");
  const std::size_t count = std::size_t{dim} * dim;
  if (bytes.size() != 8 + 16 * count) throw Error(ErrorCode::Format, "operator payload size mismatch");
  std::vector<Complex> entries(count);
  detail::read_array(in, reinterpret_cast<double*>(entries.data()), 2 * count);
  Matrix m = Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      entries.data(), dim, dim);
  const bool unitary =
      unitarity_residual(m) <= kUnitaryTolerance * static_cast<double>(dim);
  return finish_operator(std::move(m), unitary);
}

StateVector state_from_binary(std::string_view bytes) {
  std::istringstream in(std::string(bytes), std::ios::binary);
  detail::expect_magic(in, kStateMagic);
  const auto dim = detail::read_pod<std::uint32_t>(in);
  const int n = log2_exact(dim);
  if (n < 1) throw Error(ErrorCode::NotPowerOfTwo, "state dimension must be 2^n, n >= 1");
  if (bytes.size() != 8 + 16 * std::size_t{dim}) throw Error(ErrorCode::Format, "state payload size mismatch");
  Vector v(dim);
  detail::read_array(in, reinterpret_cast<double*>(v.data()), 2 * std::size_t{dim});
  return StateVector(n, std::move(v));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Operator read_operator(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.starts_with(kOperatorMagic)) return operator_from_binary(bytes);
  return operator_from_json(bytes);
}

void write_operator(const std::filesystem::path& path, const Operator& u) {
  write_file_atomic(path, path.extension() == ".json" ? to_json(u) : to_binary(u));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::Io, "write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rmtlab
