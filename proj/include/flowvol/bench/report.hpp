/*
 * Copyright 2026 The flowvol Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Result rows and their CSV encoding.
//
//   run_id,algorithm,counters,metric,x,value
//
// One header line, LF line endings, no quoting (labels never contain
// commas). Numbers use the shortest round-trip decimal form; integral
// values print without a fraction.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/trace_io.hpp"

namespace flowvol::bench {

inline constexpr std::string_view kCsvHeader = "run_id,algorithm,counters,metric,x,value";

struct ResultRow {
  std::uint64_t run_id = 0;
  std::string algorithm;
  std::uint64_t counters = 0;
  std::string metric;
  double x = 0;
  double value = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf;
  if (v == std::floor(v) && std::abs(v) < 9007199254740992.0) {
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), static_cast<std::int64_t>(v));
    return std::string(buf.data(), r.ptr);
  }
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.run_id);
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.counters);
    out += ',';
    out += r.metric;
    out += ',';
    out += format_number(r.x);
    out += ',';
    out += format_number(r.value);
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  flowvol::detail::write_file(path, to_csv(rows));
}

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  if (s == "nan" || s == "inf" || s == "-inf") {
    out = s == "nan" ? NAN : (s == "inf" ? INFINITY : -INFINITY);
    return true;
  }
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses a results CSV. Throws ParseError on a missing or different
/// header or a malformed row.
inline std::vector<ResultRow> parse_csv(std::string_view data, const std::string& source = {}) {
  std::vector<ResultRow> rows;
  bool header = false;
  flowvol::detail::for_each_line(data, [&](std::size_t line, std::string_view rec) {
    if (!rec.empty() && rec.back() == '\r') rec.remove_suffix(1);
    if (!header) {
      if (rec != kCsvHeader) throw ParseError(line, "unexpected header (schema mismatch)", source);
      header = true;
      return;
    }
    std::array<std::string_view, 6> f;
    std::size_t n = 0;
    while (n < 6) {
      const auto comma = rec.find(',');
      f[n++] = rec.substr(0, comma);
      if (comma == std::string_view::npos) {
        rec = {};
        break;
      }
      rec.remove_prefix(comma + 1);
    }
    if (n != 6 || !rec.empty()) throw ParseError(line, "expected 6 fields", source);
    ResultRow r;
    if (!flowvol::detail::parse_uint(f[0], r.run_id)) throw ParseError(line, "bad run_id", source);
    r.algorithm = std::string(f[1]);
    if (!flowvol::detail::parse_uint(f[2], r.counters)) throw ParseError(line, "bad counters", source);
    r.metric = std::string(f[3]);
    if (!detail::parse_double(f[4], r.x)) throw ParseError(line, "bad x", source);
    if (!detail::parse_double(f[5], r.value)) throw ParseError(line, "bad value", source);
    rows.push_back(std::move(r));
  });
  if (!header) throw ParseError(1, "empty file (schema mismatch)", source);
  return rows;
}

inline std::vector<ResultRow> read_csv(const std::string& path) {
  return parse_csv(flowvol::detail::read_file(path), path);
}

}  // namespace flowvol::bench
