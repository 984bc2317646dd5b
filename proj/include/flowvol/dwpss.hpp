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

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/counters.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol {

/// d-way set-associative Probabilistic Space Saving. The table is split
/// into capacity/d buckets of d slots; an id lives only in the bucket its
/// hash selects, and the admission coin is flipped against the minimum of
/// that bucket alone.
class SetAssociativePss {
 public:
  static constexpr bool kSupportsTopK = true;

  struct Slot {
    FlowId id = 0;
    std::uint64_t count = 0;  // 0 means empty
    std::uint64_t last_update = 0;
  };

  SetAssociativePss(std::size_t capacity, std::size_t ways, std::uint64_t seed,
                    std::uint64_t hash_seed = 0x5eed)
      : ways_(ways), rng_(seed), hash_seed_(hash_seed) {
    if (capacity == 0 || ways == 0) throw InvalidArgument("capacity and ways must be >= 1");
    if (capacity % ways != 0) throw InvalidArgument("ways must divide the counter capacity");
    sets_ = capacity / ways;
    slots_.resize(capacity);
  }

  void add(const Packet& p) {
    if (p.weight != 1) throw InvalidArgument("dW-PSS accepts unweighted packets only");
    add_unit(p.id);
  }

  void add_unit(FlowId id) {
    ++processed_;
    auto row = bucket(id);
    Slot* free = nullptr;
    Slot* min = nullptr;
    for (auto& s : row) {
      if (s.count == 0) {
        if (!free) free = &s;
        continue;
      }
      if (s.id == id) {
        ++s.count;
        s.last_update = processed_;
        return;
      }
      if (!min || s.count < min->count) min = &s;
    }
    if (free) {
      *free = Slot{id, 1, processed_};
      ++occupied_;
      return;
    }
    if (uniform01(rng_) * static_cast<double>(min->count + 1) < 1.0) {
      min->id = id;
      ++min->count;
      min->last_update = processed_;
      ++replaced_;
    }
  }

  /// Tracked: its counter. Untracked: its bucket's minimum (0 if the bucket
  /// still has a free slot).
  std::uint64_t query(FlowId id) const {
    std::uint64_t min = ~std::uint64_t{0};
    for (const auto& s : bucket(id)) {
      // Slots fill in order and are never emptied, so an empty slot ends the
      // occupied prefix of the bucket.
      if (s.count == 0) return 0;
      if (s.id == id) return s.count;
      min = std::min(min, s.count);
    }
    return min;
  }

  bool contains(FlowId id) const {
    for (const auto& s : bucket(id))
      if (s.count != 0 && s.id == id) return true;
    return false;
  }

  std::size_t bucket_index(FlowId id) const {
    return static_cast<std::size_t>(seeded_hash(id, hash_seed_) % sets_);
  }

  std::span<const Slot> bucket_slots(std::size_t b) const {
    return {slots_.data() + b * ways_, ways_};
  }

  std::size_t ways() const noexcept { return ways_; }
  std::size_t sets() const noexcept { return sets_; }

  TopCandidates top_candidates(std::size_t m) const {
    std::vector<Candidate> all;
    all.reserve(occupied_);
    for (const auto& s : slots_)
      if (s.count != 0) all.push_back({s.id, s.count, s.last_update});
    return select_top(std::move(all), m);
  }

  std::vector<CounterEntry> entries() const {
    std::vector<CounterEntry> out;
    for (const auto& s : slots_)
      if (s.count != 0) out.push_back({s.id, s.count});
    std::sort(out.begin(), out.end());
    return out;
  }

  EstimatorStats stats() const { return {processed_, replaced_, occupied_, slots_.size()}; }
  std::string name() const { return std::to_string(ways_) + "W-PSS"; }

 private:
  std::span<Slot> bucket(FlowId id) { return {slots_.data() + bucket_index(id) * ways_, ways_}; }
  std::span<const Slot> bucket(FlowId id) const {
    return {slots_.data() + bucket_index(id) * ways_, ways_};
  }

  std::size_t ways_;
  std::size_t sets_ = 1;
  std::vector<Slot> slots_;
  Rng rng_;
  std::uint64_t hash_seed_;
  std::uint64_t processed_ = 0;
  std::uint64_t replaced_ = 0;
  std::size_t occupied_ = 0;
};

}  // namespace flowvol
