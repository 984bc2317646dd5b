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

// Counter-based estimators over a Stream-Summary: Space Saving, Frequent
// (batch decrement) and Probabilistic Space Saving.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"
#include "flowvol/stream_summary.hpp"

namespace flowvol {

struct CounterEntry {
  FlowId id;
  std::uint64_t count;

  friend bool operator==(const CounterEntry&, const CounterEntry&) = default;
  friend auto operator<=>(const CounterEntry&, const CounterEntry&) = default;
};

namespace detail {

inline std::vector<CounterEntry> sorted_entries(const StreamSummary& s, std::uint64_t base = 0) {
  std::vector<CounterEntry> out;
  out.reserve(s.size());
  s.for_each([&](const StreamSummary::Entry& e) { out.push_back({e.id, e.count - base}); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Candidate> candidates(const StreamSummary& s, std::uint64_t base = 0) {
  std::vector<Candidate> out;
  out.reserve(s.size());
  s.for_each([&](const StreamSummary::Entry& e) {
    out.push_back({e.id, e.count - base, e.last_update});
  });
  return out;
}

}  // namespace detail

/// Space Saving. Weighted packets are applied as `weight` unit arrivals.
class SpaceSaving {
 public:
  static constexpr bool kSupportsTopK = true;

  explicit SpaceSaving(std::size_t capacity) : table_(capacity) {}

  void add(const Packet& p) {
    for (std::uint32_t i = 0; i < p.weight; ++i) add_unit(p.id);
  }

  void add_unit(FlowId id) {
    ++processed_;
    auto n = table_.find(id);
    if (n != StreamSummary::npos) {
      table_.increment(n, processed_);
    } else if (!table_.full()) {
      table_.insert(id, 1, processed_);
    } else {
      n = table_.victim();
      table_.relabel(n, id);
      table_.increment(n, processed_);
      ++replaced_;
    }
  }

  /// Tracked: its counter. Untracked: the minimum counter (0 while not full).
  std::uint64_t query(FlowId id) const {
    auto n = table_.find(id);
    if (n != StreamSummary::npos) return table_.entry(n).count;
    return table_.full() ? table_.min_count() : 0;
  }

  bool contains(FlowId id) const { return table_.find(id) != StreamSummary::npos; }

  TopCandidates top_candidates(std::size_t m) const {
    return select_top(detail::candidates(table_), m);
  }

  std::vector<CounterEntry> entries() const { return detail::sorted_entries(table_); }

  EstimatorStats stats() const { return {processed_, replaced_, table_.size(), table_.capacity()}; }
  std::string name() const { return "SS"; }
  const StreamSummary& table() const { return table_; }

 private:
  StreamSummary table_;
  std::uint64_t processed_ = 0;
  std::uint64_t replaced_ = 0;
};

/// Frequent with batch decrement: a miss on a full table decrements every
/// counter and drops the ones reaching zero; the arriving id is not stored.
/// Stored counts are offset by `base_` so the decrement is O(1) amortized.
class Frequent {
 public:
  static constexpr bool kSupportsTopK = true;

  explicit Frequent(std::size_t capacity) : table_(capacity) {}

  void add(const Packet& p) {
    for (std::uint32_t i = 0; i < p.weight; ++i) add_unit(p.id);
  }

  void add_unit(FlowId id) {
    ++processed_;
    auto n = table_.find(id);
    if (n != StreamSummary::npos) {
      table_.increment(n, processed_);
    } else if (!table_.full()) {
      table_.insert(id, base_ + 1, processed_);
    } else {
      // Every stored count is >= base_ + 1 before the decrement, so only
      // the minimal bucket can drop to zero.
      ++base_;
      if (table_.min_count() == base_) {
        const std::size_t before = table_.size();
        table_.erase_min_bucket();
        evicted_ += before - table_.size();
      }
    }
  }

  /// Tracked: its counter. Untracked: 0 (Frequent underestimates).
  std::uint64_t query(FlowId id) const {
    auto n = table_.find(id);
    return n == StreamSummary::npos ? 0 : table_.entry(n).count - base_;
  }

  bool contains(FlowId id) const { return table_.find(id) != StreamSummary::npos; }

  TopCandidates top_candidates(std::size_t m) const {
    return select_top(detail::candidates(table_, base_), m);
  }

  std::vector<CounterEntry> entries() const { return detail::sorted_entries(table_, base_); }

  /// `replaced` reports evictions: a flow losing its slot.
  EstimatorStats stats() const { return {processed_, evicted_, table_.size(), table_.capacity()}; }
  std::string name() const { return "FR"; }

 private:
  StreamSummary table_;
  std::uint64_t base_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t evicted_ = 0;
};

/// Probabilistic Space Saving. A miss on a full table takes over the
/// minimal entry with probability 1 / (c_min + 1), setting its counter to
/// c_min + 1; otherwise the table is left untouched.
class ProbabilisticSpaceSaving {
 public:
  static constexpr bool kSupportsTopK = true;

  ProbabilisticSpaceSaving(std::size_t capacity, std::uint64_t seed)
      : table_(capacity), rng_(seed) {}

  void add(const Packet& p) {
    if (p.weight != 1) throw InvalidArgument("PSS accepts unweighted packets only");
    add_unit(p.id);
  }

  void add_unit(FlowId id) {
    ++processed_;
    auto n = table_.find(id);
    if (n != StreamSummary::npos) {
      table_.increment(n, processed_);
    } else if (!table_.full()) {
      table_.insert(id, 1, processed_);
    } else {
      const std::uint64_t c = table_.min_count();
      if (uniform01(rng_) * static_cast<double>(c + 1) < 1.0) {
        n = table_.victim();
        table_.relabel(n, id);
        table_.increment(n, processed_);
        ++replaced_;
      }
    }
  }

  std::uint64_t query(FlowId id) const {
    auto n = table_.find(id);
    if (n != StreamSummary::npos) return table_.entry(n).count;
    return table_.full() ? table_.min_count() : 0;
  }

  bool contains(FlowId id) const { return table_.find(id) != StreamSummary::npos; }

  TopCandidates top_candidates(std::size_t m) const {
    return select_top(detail::candidates(table_), m);
  }

  std::vector<CounterEntry> entries() const { return detail::sorted_entries(table_); }

  EstimatorStats stats() const { return {processed_, replaced_, table_.size(), table_.capacity()}; }
  std::string name() const { return "PSS"; }
  const StreamSummary& table() const { return table_; }

 private:
  StreamSummary table_;
  Rng rng_;
  std::uint64_t processed_ = 0;
  std::uint64_t replaced_ = 0;
};

}  // namespace flowvol
