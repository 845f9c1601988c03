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

// Helpers shared by the "kind:arg:arg" spec-string parsers.

#ifndef RMTLAB_PARSE_HPP
#define RMTLAB_PARSE_HPP

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rmtlab/error.hpp"

namespace rmtlab {

inline std::vector<std::string> split_spec(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline long long parse_int(std::string_view s, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

inline double parse_double(std::string_view s, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "bad number for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

/// Shortest representation that round-trips.
inline std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace rmtlab

#endif  // RMTLAB_PARSE_HPP
