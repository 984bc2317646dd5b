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

// Hierarchical heavy hitters over IPv4 prefixes at byte granularity.
// One FAST instance per prefix pattern; every packet is generalized to all
// patterns and fed to each instance. No descendant discounting.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/fast.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/trace_io.hpp"

namespace flowvol {

/// Prefix lengths (in bits) per dimension. 1D: {src}; 2D: {src, dst}.
struct PrefixPattern {
  std::uint8_t src_bits = 32;
  std::uint8_t dst_bits = 32;

  friend bool operator==(const PrefixPattern&, const PrefixPattern&) = default;
};

inline constexpr std::uint32_t prefix_mask(unsigned bits) {
  return bits == 0 ? 0u : ~std::uint32_t{0} << (32 - bits);
}

/// "101.102.*" for a 16-bit prefix, "*" for zero bits.
inline std::string prefix_label(std::uint32_t addr, unsigned bits) {
  if (bits == 0) return "*";
  std::string out;
  for (unsigned octet = 0; octet < bits / 8; ++octet) {
    if (octet) out += '.';
    out += std::to_string((addr >> (24 - 8 * octet)) & 0xff);
  }
  if (bits < 32) out += ".*";
  return out;
}

class Hierarchy {
 public:
  /// Byte-granular IPv4 lattice: 5 patterns in 1D, 25 in 2D, ordered from
  /// fully specified to fully general.
  static Hierarchy ipv4_bytes(unsigned dims) {
    if (dims != 1 && dims != 2) throw InvalidArgument("hierarchy dimensions must be 1 or 2");
    Hierarchy h;
    h.dims_ = dims;
    static constexpr std::uint8_t kLevels[] = {32, 24, 16, 8, 0};
    if (dims == 1) {
      for (auto b : kLevels) h.patterns_.push_back({b, 0});
    } else {
      for (auto s : kLevels)
        for (auto d : kLevels) h.patterns_.push_back({s, d});
    }
    return h;
  }

  unsigned dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  const std::vector<PrefixPattern>& patterns() const noexcept { return patterns_; }

  bool is_root(std::size_t i) const {
    return patterns_[i].src_bits == 0 && (dims_ == 1 || patterns_[i].dst_bits == 0);
  }

  /// Key of (src, dst) under pattern i. 2D keys pack src in the high half.
  FlowId key(std::size_t i, std::uint32_t src, std::uint32_t dst = 0) const {
    const auto& p = patterns_[i];
    const FlowId s = src & prefix_mask(p.src_bits);
    if (dims_ == 1) return s;
    return (s << 32) | (dst & prefix_mask(p.dst_bits));
  }

  std::vector<FlowId> generalize(std::uint32_t src, std::uint32_t dst = 0) const {
    std::vector<FlowId> out(patterns_.size());
    for (std::size_t i = 0; i < patterns_.size(); ++i) out[i] = key(i, src, dst);
    return out;
  }

  std::string label(std::size_t i, FlowId key) const {
    const auto& p = patterns_[i];
    if (dims_ == 1) return prefix_label(static_cast<std::uint32_t>(key), p.src_bits);
    return prefix_label(static_cast<std::uint32_t>(key >> 32), p.src_bits) + "|" +
           prefix_label(static_cast<std::uint32_t>(key), p.dst_bits);
  }

  /// "src/24" or "src/24,dst/8".
  std::string pattern_name(std::size_t i) const {
    const auto& p = patterns_[i];
    std::string out = "src/" + std::to_string(p.src_bits);
    if (dims_ == 2) out += ",dst/" + std::to_string(p.dst_bits);
    return out;
  }

 private:
  unsigned dims_ = 1;
  std::vector<PrefixPattern> patterns_;
};

struct HhhItem {
  std::size_t pattern = 0;
  FlowId key = 0;
  std::uint64_t estimate = 0;
  std::string label;
};

class HierarchicalFast {
 public:
  HierarchicalFast(Hierarchy h, const FastConfig& cfg) : h_(std::move(h)) {
    levels_.reserve(h_.size());
    for (std::size_t i = 0; i < h_.size(); ++i) levels_.emplace_back(cfg);
  }

  const Hierarchy& hierarchy() const noexcept { return h_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const Fast& level(std::size_t i) const { return levels_[i]; }
  std::uint64_t processed() const noexcept { return processed_; }
  std::uint64_t instance_updates() const noexcept { return updates_; }

  void add(const AddressPacket& p) {
    const auto m = levels_.front().max_weight();
    if (p.weight < 1 || p.weight > m)
      throw ValidationError("weight " + std::to_string(p.weight) + " outside [1, " +
                            std::to_string(m) + "]");
    ++processed_;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      levels_[i].add(h_.key(i, p.src, p.dst), p.weight);
      ++updates_;
    }
  }

  std::uint64_t query(std::size_t pattern, FlowId key) const { return levels_[pattern].query(key); }

  /// Per-pattern heavy hitters at threshold N * M * theta.
  std::vector<HhhItem> query_hhh(double theta, bool include_root = true) const {
    std::vector<HhhItem> out;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (!include_root && h_.is_root(i)) continue;
      for (FlowId k : levels_[i].heavy_hitters(theta, processed_))
        out.push_back({i, k, levels_[i].query(k), h_.label(i, k)});
    }
    return out;
  }

 private:
  Hierarchy h_;
  std::vector<Fast> levels_;
  std::uint64_t processed_ = 0;
  std::uint64_t updates_ = 0;
};

struct AddressTraceSpec {
  double skew = 1.0;  // per-byte Zipf skew over 256 values
  std::uint64_t length = 0;
  std::uint32_t max_weight = 1;
  std::uint64_t seed = 1;
};

/// Synthetic address pairs whose eight bytes are drawn independently, each
/// Zipf over 256 values, so heavy prefixes appear at every level. Rank r
/// maps to byte (167 r + 10) mod 256 to avoid an all-zero heavy address.
inline std::vector<AddressPacket> generate_address_trace(const AddressTraceSpec& spec) {
  if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew))
    throw InvalidArgument("zipf skew must be a finite value >= 0");
  if (spec.max_weight == 0) throw InvalidArgument("max_weight must be >= 1");
  const auto cdf = ZipfGenerator::exact_cdf(spec.skew, 256);
  Rng rng(spec.seed);
  auto byte = [&] {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform01(rng));
    if (it == cdf.end()) --it;
    return static_cast<std::uint32_t>((167 * (it - cdf.begin() + 1) + 10) & 0xff);
  };
  std::vector<AddressPacket> out(spec.length);
  for (auto& p : out) {
    for (int i = 0; i < 4; ++i) p.src = (p.src << 8) | byte();
    for (int i = 0; i < 4; ++i) p.dst = (p.dst << 8) | byte();
    p.weight = static_cast<std::uint32_t>(uniform_int(rng, 1, spec.max_weight));
  }
  return out;
}

}  // namespace flowvol
