// Copyright 2026 The tsobs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef TSOBS_FORMAT_HPP_
#define TSOBS_FORMAT_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tsobs {

// Shortest decimal text that reads back to the same double. Locale
// independent, so files are byte-identical across environments.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    return std::nullopt;
  return x;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t x = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    return std::nullopt;
  return x;
}

}  // namespace tsobs

#endif  // TSOBS_FORMAT_HPP_
