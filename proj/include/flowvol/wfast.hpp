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

// Sliding-window FAST.
//
// The stream is cut into frames of W packets, each split into k blocks.
// An inner FAST instance counts the current frame and is flushed when a
// frame ends. Whenever a flow's in-frame estimate crosses a multiple of
// T = M * W / k the flow is recorded in the current block's queue; the
// queue ring keeps the last k + 1 blocks and `overflows_` mirrors its
// histogram. Expired entries are retired one per arrival.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"
#include "flowvol/fast.hpp"

namespace flowvol {

struct WindowConfig {
  std::uint64_t window = 1024;  // W, rounded up to a multiple of k
  std::uint32_t max_weight = 1;
  double epsilon = 0.25;
  double gamma = 1.0;
};

struct WindowStats {
  std::uint64_t processed = 0;
  std::uint64_t overflows = 0;     // overflow events recorded so far
  std::uint64_t flushes = 0;
  std::size_t queued = 0;          // ids currently held across all block queues
  std::size_t max_queued = 0;
  std::size_t histogram_keys = 0;  // distinct ids with a live overflow
};

class WindowedFast {
 public:
  static constexpr bool kSupportsTopK = false;

  explicit WindowedFast(const WindowConfig& cfg)
      : cfg_(cfg), blocks_(block_count(cfg.epsilon)), inner_(inner_config(cfg)) {
    if (cfg.window == 0) throw InvalidArgument("window must be >= 1");
    window_ = (cfg.window + blocks_ - 1) / blocks_ * blocks_;
    block_len_ = window_ / blocks_;
    threshold_ = static_cast<std::uint64_t>(cfg.max_weight) * window_ / blocks_;
    if (threshold_ == 0) throw InvalidArgument("M * W / k must be >= 1");
    ring_.resize(blocks_ + 1);
  }

  /// k = ceil(4 / epsilon).
  static std::uint64_t block_count(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidArgument("epsilon must be in (0, 1]");
    return tolerant_ceil(4.0 / epsilon);
  }

  std::uint64_t effective_window() const noexcept { return window_; }
  bool was_rounded() const noexcept { return window_ != cfg_.window; }
  std::uint64_t blocks() const noexcept { return blocks_; }
  std::uint64_t block_length() const noexcept { return block_len_; }
  std::uint64_t overflow_threshold() const noexcept { return threshold_; }
  std::uint64_t frame_offset() const noexcept { return offset_; }
  std::uint32_t max_weight() const noexcept { return cfg_.max_weight; }
  const Fast& frame_counter() const noexcept { return inner_; }

  void add(const Packet& p) { add(p.id, p.weight); }

  void add(FlowId id, std::uint32_t w) {
    if (w < 1 || w > cfg_.max_weight)
      throw ValidationError("weight " + std::to_string(w) + " outside [1, " +
                            std::to_string(cfg_.max_weight) + "]");
    ++st_.processed;
    offset_ = (offset_ + 1) % window_;
    if (offset_ == 0) {
      inner_.flush();
      ++st_.flushes;
    }
    if (offset_ % block_len_ == 0) {
      // A block records at most one overflow per arrival and its queue gets
      // one block of single-item retirements as the oldest, so it is empty
      // here; the loop only guards the histogram.
      for (FlowId old : ring_.front()) retire(old);
      st_.queued -= ring_.front().size();
      ring_.pop_front();
      ring_.emplace_back();
    }
    if (!ring_.front().empty()) {
      retire(ring_.front().front());
      ring_.front().pop_front();
      --st_.queued;
    }
    const std::uint64_t before = inner_.query(id) / threshold_;
    inner_.add(id, w);
    if (inner_.query(id) / threshold_ > before) {
      ring_.back().push_back(id);
      ++overflows_[id];
      ++st_.overflows;
      ++st_.queued;
      st_.max_queued = std::max(st_.max_queued, st_.queued);
    }
  }

  std::uint64_t winquery(FlowId id) const {
    auto it = overflows_.find(id);
    if (it != overflows_.end())
      return threshold_ * (it->second + 2) + inner_.query(id) % threshold_;
    return 2 * threshold_ + inner_.query(id);
  }

  std::uint64_t query(FlowId id) const { return winquery(id); }

  /// Live overflow count of id (0 if none).
  std::uint64_t overflow_count(FlowId id) const {
    auto it = overflows_.find(id);
    return it == overflows_.end() ? 0 : it->second;
  }

  /// Ids tracked by the frame counter or holding overflows whose window
  /// estimate reaches M * W * theta.
  std::vector<FlowId> window_heavy_hitters(double theta) const {
    const double threshold = static_cast<double>(cfg_.max_weight) * window_ * theta;
    std::vector<FlowId> out;
    auto consider = [&](FlowId id) {
      if (static_cast<double>(winquery(id)) >= threshold) out.push_back(id);
    };
    inner_.for_each_entry([&](const Fast::Entry& e) { consider(e.id); });
    for (const auto& [id, cnt] : overflows_)
      if (!inner_.contains(id)) consider(id);
    std::sort(out.begin(), out.end());
    return out;
  }

  template <class F>
  void for_each_overflow(F&& f) const {
    for (const auto& [id, cnt] : overflows_) f(id, cnt);
  }

  /// Histogram equals the multiset of queued ids and the ring has k + 1 queues.
  bool audit() const {
    if (ring_.size() != blocks_ + 1) return false;
    std::unordered_map<FlowId, std::uint64_t> hist;
    std::size_t total = 0;
    for (const auto& q : ring_) {
      for (FlowId id : q) ++hist[id];
      total += q.size();
    }
    if (total != st_.queued) return false;
    return hist == overflows_;
  }

  WindowStats window_stats() const {
    WindowStats s = st_;
    s.histogram_keys = overflows_.size();
    return s;
  }

  EstimatorStats stats() const {
    const auto in = inner_.stats();
    return {st_.processed, in.replaced, in.occupied + overflows_.size(), in.capacity};
  }
  std::string name() const { return "WFAST"; }

 private:
  static FastConfig inner_config(const WindowConfig& cfg) {
    const auto k = block_count(cfg.epsilon);
    FastConfig f;
    f.max_weight = cfg.max_weight;
    f.epsilon = 1.0 / static_cast<double>(k);
    f.gamma = cfg.gamma;
    f.capacity = static_cast<std::size_t>(tolerant_ceil((1.0 + cfg.gamma) * static_cast<double>(k)));
    return f;
  }

  void retire(FlowId id) {
    auto it = overflows_.find(id);
    if (--it->second == 0) overflows_.erase(it);
  }

  WindowConfig cfg_;
  std::uint64_t blocks_;
  std::uint64_t window_ = 0;
  std::uint64_t block_len_ = 0;
  std::uint64_t threshold_ = 0;
  Fast inner_;
  std::uint64_t offset_ = 0;
  // front: oldest block, back: current block
  std::deque<std::deque<FlowId>> ring_;
  std::unordered_map<FlowId, std::uint64_t> overflows_;
  WindowStats st_;
};

}  // namespace flowvol
