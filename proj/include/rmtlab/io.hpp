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

// Serialization of operators and states.
//
// JSON:
//   {"type": "operator", "dim": N, "unitary": bool, "entries": [[re, im], ...]}
//   {"type": "state", "n_qubits": n, "amplitudes": [[re, im], ...]}
// entries are row-major. Doubles are printed with round-trip precision.
//
// Binary (little-endian):
//   operator: "RMTL", u32 dim, 2 N^2 float64 (row-major re, im pairs)
//   state:    "RMTV", u32 dim, 2 N float64
// A binary operator is flagged unitary on load when it passes the unitarity check.

#ifndef RMTLAB_IO_HPP
#define RMTLAB_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "rmtlab/qcore.hpp"

namespace rmtlab {

std::string to_json(const Operator& u);
std::string to_json(const StateVector& psi);
Operator operator_from_json(std::string_view text);
StateVector state_from_json(std::string_view text);

std::string to_binary(const Operator& u);
std::string to_binary(const StateVector& psi);
Operator operator_from_binary(std::string_view bytes);
StateVector state_from_binary(std::string_view bytes);

/// Reads an operator from a .json or binary file (detected by content).
Operator read_operator(const std::filesystem::path& path);
/// Writes JSON when the extension is .json, binary otherwise.
void write_operator(const std::filesystem::path& path, const Operator& u);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place, so readers never
/// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace rmtlab

#endif  // RMTLAB_IO_HPP
