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


// Weighted Space Saving over an indexed binary min-heap. Reference
// baseline for the constant-time comparison: updates cost O(log capacity).

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol::bench {

class HeapSpaceSaving {
 public:
  static constexpr bool kSupportsTopK = true;

  explicit HeapSpaceSaving(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidArgument("counter capacity must be >= 1");
    heap_.reserve(capacity);
    pos_.reserve(capacity * 2);
  }

  void add(const Packet& p) {
    ++processed_;
    auto it = pos_.find(p.id);
    if (it != pos_.end()) {
      heap_[it->second].count += p.weight;
      heap_[it->second].last_update = processed_;
      sift_down(it->second);
    } else if (heap_.size() < capacity_) {
      heap_.push_back({p.id, p.weight, processed_});
      pos_.emplace(p.id, heap_.size() - 1);
      sift_up(heap_.size() - 1);
    } else {
      Slot& root = heap_[0];
      pos_.erase(root.id);
      root.id = p.id;
      root.count += p.weight;
      root.last_update = processed_;
      pos_.emplace(p.id, 0);
      ++replaced_;
      sift_down(0);
    }
  }

  std::uint64_t query(FlowId id) const {
    auto it = pos_.find(id);
    if (it != pos_.end()) return heap_[it->second].count;
    return heap_.size() < capacity_ ? 0 : heap_[0].count;
  }

  TopCandidates top_candidates(std::size_t m) const {
    std::vector<Candidate> all;
    all.reserve(heap_.size());
    for (const auto& s : heap_) all.push_back({s.id, s.count, s.last_update});
    return select_top(std::move(all), m);
  }

  /// Heap order and index consistency.
  bool audit() const {
    if (pos_.size() != heap_.size()) return false;
    for (std::size_t i = 0; i < heap_.size(); ++i) {
      auto it = pos_.find(heap_[i].id);
      if (it == pos_.end() || it->second != i) return false;
      if (i && heap_[(i - 1) / 2].count > heap_[i].count) return false;
    }
    return true;
  }

  EstimatorStats stats() const { return {processed_, replaced_, heap_.size(), capacity_}; }
  std::string name() const { return "SSH"; }

 private:
  struct Slot {
    FlowId id;
    std::uint64_t count;
    std::uint64_t last_update;
  };

  void place(std::size_t i, Slot s) {
    heap_[i] = s;
    pos_[s.id] = i;
  }

  void sift_up(std::size_t i) {
    Slot s = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (heap_[parent].count <= s.count) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, s);
  }

  void sift_down(std::size_t i) {
    Slot s = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && heap_[child + 1].count < heap_[child].count) ++child;
      if (heap_[child].count >= s.count) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, s);
  }

  std::size_t capacity_;
  std::vector<Slot> heap_;
  std::unordered_map<FlowId, std::size_t> pos_;
  std::uint64_t processed_ = 0;
  std::uint64_t replaced_ = 0;
};

}  // namespace flowvol::bench
