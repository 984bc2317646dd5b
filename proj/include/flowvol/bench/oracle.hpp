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


// Exact ground truth for the benchmark metrics.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol::bench {

/// Exact per-flow volumes.
class ExactOracle {
 public:
  static constexpr bool kSupportsTopK = false;

  void add(const Packet& p) {
    counts_[p.id] += p.weight;
    ++processed_;
  }

  std::uint64_t query(FlowId id) const {
    auto it = counts_.find(id);
    return it == counts_.end() ? 0 : it->second;
  }

  std::size_t distinct() const noexcept { return counts_.size(); }
  std::uint64_t processed() const noexcept { return processed_; }
  const std::unordered_map<FlowId, std::uint64_t>& counts() const noexcept { return counts_; }

  /// The k-th largest volume (the smallest one when fewer than k flows exist).
  std::uint64_t kth_largest(std::size_t k) const {
    if (counts_.empty() || k == 0) return 0;
    std::vector<std::uint64_t> v;
    v.reserve(counts_.size());
    for (const auto& [id, c] : counts_) v.push_back(c);
    const std::size_t idx = std::min(k, v.size()) - 1;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end(),
                     std::greater<>());
    return v[idx];
  }

  EstimatorStats stats() const { return {processed_, 0, counts_.size(), counts_.size()}; }
  std::string name() const { return "EXACT"; }

 private:
  std::unordered_map<FlowId, std::uint64_t> counts_;
  std::uint64_t processed_ = 0;
};

/// Exact volumes over the last `window` packets.
class WindowOracle {
 public:
  explicit WindowOracle(std::uint64_t window) : window_(window) {
    if (window == 0) throw InvalidArgument("window must be >= 1");
  }

  void add(const Packet& p) {
    ring_.push_back(p);
    vol_[p.id] += p.weight;
    if (ring_.size() > window_) {
      const Packet old = ring_.front();
      ring_.pop_front();
      auto it = vol_.find(old.id);
      if ((it->second -= old.weight) == 0) vol_.erase(it);
    }
  }

  std::uint64_t query(FlowId id) const {
    auto it = vol_.find(id);
    return it == vol_.end() ? 0 : it->second;
  }

  const std::unordered_map<FlowId, std::uint64_t>& volumes() const noexcept { return vol_; }

 private:
  std::uint64_t window_;
  std::deque<Packet> ring_;
  std::unordered_map<FlowId, std::uint64_t> vol_;
};

}  // namespace flowvol::bench
