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

// Little-endian raw readers/writers. The host must be little-endian.

#ifndef RMTLAB_SRC_BINARY_IO_HPP
#define RMTLAB_SRC_BINARY_IO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string_view>

#include "rmtlab/error.hpp"

namespace rmtlab::detail {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void write_array(std::ostream& out, const T* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(sizeof(T) * count));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::Format, "unexpected end of binary data");
  return value;
}

template <typename T>
void read_array(std::istream& in, T* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(sizeof(T) * count));
  if (!in) throw Error(ErrorCode::Format, "unexpected end of binary data");
}

inline void expect_magic(std::istream& in, std::string_view magic) {
  char buf[16] = {};
  in.read(buf, static_cast<std::streamsize>(magic.size()));
  if (!in || std::string_view(buf, magic.size()) != magic) {
    throw Error(ErrorCode::Format, "bad magic, expected '" + std::string(magic) + "'");
  }
}

}  // namespace rmtlab::detail

#endif  // RMTLAB_SRC_BINARY_IO_HPP
