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

// Trace files.
//
//   text:   one "id,weight" record per line, decimal, LF terminated, no header.
//   binary: packed little-endian records of (u64 id, u32 weight), 12 bytes
//           each, no header; the record count is file_size / 12.
//   hhh:    one "src,dst,weight" record per line, dotted-quad IPv4.

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/stream.hpp"

namespace flowvol {

enum class TraceFormat { Text, Binary };

inline constexpr std::size_t kBinaryRecordSize = 12;

/// ".bin" selects binary, anything else text.
inline TraceFormat format_from_path(std::string_view path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".bin" ? TraceFormat::Binary
                                                                      : TraceFormat::Text;
}

struct Trace {
  std::vector<Packet> packets;
  StreamDescriptor descriptor;
};

namespace detail {

template <class T>
bool parse_uint(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out, 10);
  return ec == std::errc{} && ptr == end;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path, "read failed");
  return data;
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

template <class F>
void for_each_line(std::string_view data, F&& f) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    ++line;
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    f(line, data.substr(pos, nl - pos));
    pos = nl + 1;
  }
}

inline Packet parse_text_record(std::size_t line, std::string_view rec, const std::string& src) {
  const auto comma = rec.find(',');
  if (comma == std::string_view::npos) throw ParseError(line, "expected 'id,weight'", src);
  Packet p;
  std::uint64_t w = 0;
  if (!parse_uint(rec.substr(0, comma), p.id)) throw ParseError(line, "bad id", src);
  if (!parse_uint(rec.substr(comma + 1), w) || w > 0xffffffffULL)
    throw ParseError(line, "bad weight", src);
  if (w < 1) throw ValidationError("line " + std::to_string(line) + ": weight must be >= 1");
  p.weight = static_cast<std::uint32_t>(w);
  return p;
}

}  // namespace detail

inline Trace parse_text_trace(std::string_view data, const std::string& source = {}) {
  Trace t;
  detail::for_each_line(data, [&](std::size_t line, std::string_view rec) {
    t.packets.push_back(detail::parse_text_record(line, rec, source));
  });
  t.descriptor = describe(t.packets);
  return t;
}

/// For binary traces the reported "line" is the 1-based record index.
inline Trace parse_binary_trace(std::string_view data, const std::string& source = {}) {
  if (data.size() % kBinaryRecordSize != 0)
    throw ParseError(data.size() / kBinaryRecordSize + 1, "truncated binary record", source);
  Trace t;
  const std::size_t n = data.size() / kBinaryRecordSize;
  t.packets.resize(n);
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char* r = bytes + i * kBinaryRecordSize;
    std::uint64_t id = 0;
    std::uint32_t w = 0;
    for (int b = 7; b >= 0; --b) id = (id << 8) | r[b];
    for (int b = 3; b >= 0; --b) w = (w << 8) | r[8 + b];
    if (w < 1) throw ValidationError("record " + std::to_string(i + 1) + ": weight must be >= 1");
    t.packets[i] = Packet{id, w};
  }
  t.descriptor = describe(t.packets);
  return t;
}

inline std::string serialize_text(std::span<const Packet> packets) {
  std::string out;
  out.reserve(packets.size() * 12);
  std::array<char, 32> buf;
  for (const auto& p : packets) {
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), p.id);
    out.append(buf.data(), r.ptr);
    out.push_back(',');
    r = std::to_chars(buf.data(), buf.data() + buf.size(), p.weight);
    out.append(buf.data(), r.ptr);
    out.push_back('\n');
  }
  return out;
}

inline std::string serialize_binary(std::span<const Packet> packets) {
  std::string out(packets.size() * kBinaryRecordSize, '\0');
  auto* bytes = reinterpret_cast<unsigned char*>(out.data());
  for (std::size_t i = 0; i < packets.size(); ++i) {
    unsigned char* r = bytes + i * kBinaryRecordSize;
    for (int b = 0; b < 8; ++b) r[b] = static_cast<unsigned char>(packets[i].id >> (8 * b));
    for (int b = 0; b < 4; ++b) r[8 + b] = static_cast<unsigned char>(packets[i].weight >> (8 * b));
  }
  return out;
}

inline Trace read_trace(const std::string& path, TraceFormat format) {
  const std::string data = detail::read_file(path);
  return format == TraceFormat::Binary ? parse_binary_trace(data, path)
                                       : parse_text_trace(data, path);
}

inline Trace read_trace(const std::string& path) { return read_trace(path, format_from_path(path)); }

inline void write_trace(std::span<const Packet> packets, const std::string& path, TraceFormat format) {
  detail::write_file(path, format == TraceFormat::Binary ? serialize_binary(packets)
                                                         : serialize_text(packets));
}

inline void write_trace(std::span<const Packet> packets, const std::string& path) {
  write_trace(packets, path, format_from_path(path));
}

// --- address traces for hierarchical mode ---------------------------------

struct AddressPacket {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint32_t weight = 1;

  friend bool operator==(const AddressPacket&, const AddressPacket&) = default;
};

inline std::string format_ipv4(std::uint32_t ip) {
  return std::to_string(ip >> 24) + "." + std::to_string((ip >> 16) & 0xff) + "." +
         std::to_string((ip >> 8) & 0xff) + "." + std::to_string(ip & 0xff);
}

inline bool parse_ipv4(std::string_view s, std::uint32_t& out) {
  std::uint32_t ip = 0;
  for (int octet = 0; octet < 4; ++octet) {
    const auto dot = octet < 3 ? s.find('.') : s.size();
    if (dot == std::string_view::npos) return false;
    unsigned v = 0;
    if (!detail::parse_uint(s.substr(0, dot), v) || v > 255) return false;
    ip = (ip << 8) | v;
    s = octet < 3 ? s.substr(dot + 1) : std::string_view{};
  }
  out = ip;
  return true;
}

inline std::vector<AddressPacket> parse_address_trace(std::string_view data,
                                                      const std::string& src = {}) {
  std::vector<AddressPacket> out;
  detail::for_each_line(data, [&](std::size_t line, std::string_view rec) {
    const auto c1 = rec.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : rec.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError(line, "expected 'src,dst,weight'", src);
    AddressPacket p;
    std::uint64_t w = 0;
    if (!parse_ipv4(rec.substr(0, c1), p.src)) throw ParseError(line, "bad source address", src);
    if (!parse_ipv4(rec.substr(c1 + 1, c2 - c1 - 1), p.dst))
      throw ParseError(line, "bad destination address", src);
    if (!detail::parse_uint(rec.substr(c2 + 1), w) || w > 0xffffffffULL)
      throw ParseError(line, "bad weight", src);
    if (w < 1) throw ValidationError("line " + std::to_string(line) + ": weight must be >= 1");
    p.weight = static_cast<std::uint32_t>(w);
    out.push_back(p);
  });
  return out;
}

inline std::vector<AddressPacket> read_address_trace(const std::string& path) {
  return parse_address_trace(detail::read_file(path), path);
}

inline void write_address_trace(std::span<const AddressPacket> packets, const std::string& path) {
  std::string out;
  for (const auto& p : packets) {
    out += format_ipv4(p.src);
    out += ',';
    out += format_ipv4(p.dst);
    out += ',';
    out += std::to_string(p.weight);
    out += '\n';
  }
  detail::write_file(path, out);
}

}  // namespace flowvol
