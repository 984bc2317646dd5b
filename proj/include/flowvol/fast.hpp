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

// FAST: weighted volume estimation and heavy hitters with constant-time
// updates over a semi-ordered summary.
//
// A flow's volume is kept as a coarse counter c (the SOS group value,
// in units of the step s) plus a remainder r in [0, s). The estimate is
// r + s * c. Groups are ordered; members within a group are not.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"
#include "flowvol/sos.hpp"

namespace flowvol {

struct FastConfig {
  std::uint32_t max_weight = 1;  // M
  double epsilon = 0.01;
  double gamma = 1.0;
  std::size_t capacity = 0;  // 0: derive ceil((1 + gamma) / epsilon)
};

/// floor(x) that forgives floating-point noise just below an integer.
inline std::uint64_t tolerant_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::floor(x));
}

/// Step s = floor(M * gamma / 2 + 1).
inline std::uint64_t fast_step(std::uint32_t max_weight, double gamma) {
  return tolerant_floor(static_cast<double>(max_weight) * gamma / 2.0 + 1.0);
}

inline std::size_t fast_capacity(double epsilon, double gamma) {
  return static_cast<std::size_t>(tolerant_ceil((1.0 + gamma) / epsilon));
}

struct FastStats {
  std::uint64_t processed = 0;
  std::uint64_t volume = 0;
  std::uint64_t evictions = 0;
  std::size_t last_hops = 0;
  std::size_t max_hops = 0;
  std::uint64_t total_hops = 0;
};

class Fast {
 public:
  static constexpr bool kSupportsTopK = true;

  struct Entry {
    FlowId id;
    std::uint64_t counter;    // c
    std::uint64_t remainder;  // r
    std::uint64_t estimate;   // r + s * c
  };

  explicit Fast(const FastConfig& cfg) : cfg_(validated(cfg)), sos_(resolve_capacity(cfg_)) {
    step_ = fast_step(cfg_.max_weight, cfg_.gamma);
  }

  const FastConfig& config() const noexcept { return cfg_; }
  std::uint64_t step() const noexcept { return step_; }
  std::size_t capacity() const noexcept { return sos_.capacity(); }
  std::uint32_t max_weight() const noexcept { return cfg_.max_weight; }

  /// Largest group distance a single add may cover: 1 + 2 / gamma.
  double hop_bound() const { return cfg_.gamma > 0 ? 1.0 + 2.0 / cfg_.gamma : cfg_.max_weight; }

  void add(const Packet& p) { add(p.id, p.weight); }

  void add(FlowId id, std::uint32_t w) {
    if (w < 1 || w > cfg_.max_weight)
      throw ValidationError("weight " + std::to_string(w) + " outside [1, " +
                            std::to_string(cfg_.max_weight) + "]");
    ++st_.processed;
    st_.volume += w;
    std::size_t hops = 0;
    auto n = sos_.find(id);
    if (n != SemiOrderedSummary::npos) {
      const std::uint64_t r = sos_.node(n).remainder + w;
      sos_.set_remainder(n, r % step_, st_.processed);
      hops = sos_.advance(n, r / step_);
      sum_ += w;
    } else if (!sos_.full()) {
      sos_.insert(id, w / step_, w % step_, st_.processed, hops);
      sum_ += w;
    } else {
      n = sos_.victim();
      const std::uint64_t old = estimate_of(n);
      const std::uint64_t lifted = step_ - 1 + w;
      sos_.relabel(n, id);
      sos_.set_remainder(n, lifted % step_, st_.processed);
      hops = sos_.advance(n, lifted / step_);
      sum_ += estimate_of(n) - old;
      ++st_.evictions;
    }
    st_.last_hops = hops;
    st_.max_hops = std::max(st_.max_hops, hops);
    st_.total_hops += hops;
  }

  std::uint64_t query(FlowId id) const {
    auto n = sos_.find(id);
    if (n != SemiOrderedSummary::npos) return estimate_of(n);
    if (!sos_.full()) return 0;
    return step_ - 1 + step_ * sos_.min_value();
  }

  bool contains(FlowId id) const { return sos_.find(id) != SemiOrderedSummary::npos; }

  /// Tracked ids whose estimate reaches N * M * theta. N defaults to the
  /// packets processed since construction or the last flush.
  std::vector<FlowId> heavy_hitters(double theta) const { return heavy_hitters(theta, st_.processed); }

  std::vector<FlowId> heavy_hitters(double theta, std::uint64_t n) const {
    const double threshold = static_cast<double>(n) * cfg_.max_weight * theta;
    std::vector<FlowId> out;
    sos_.for_each([&](const SemiOrderedSummary::Node& nd, std::uint64_t c) {
      if (static_cast<double>(nd.remainder + step_ * c) >= threshold) out.push_back(nd.id);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Resets all counters and remainders.
  void flush() {
    sos_.clear();
    st_ = FastStats{};
    sum_ = 0;
  }

  /// Sum of estimates over tracked flows, maintained incrementally.
  std::uint64_t tracked_sum() const noexcept { return sum_; }

  /// Smallest coarse counter among tracked flows.
  std::uint64_t min_counter() const { return sos_.min_value(); }

  template <class F>
  void for_each_entry(F&& f) const {
    sos_.for_each([&](const SemiOrderedSummary::Node& nd, std::uint64_t c) {
      f(Entry{nd.id, c, nd.remainder, nd.remainder + step_ * c});
    });
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(sos_.size());
    for_each_entry([&](const Entry& e) { out.push_back(e); });
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
    return out;
  }

  TopCandidates top_candidates(std::size_t m) const {
    std::vector<Candidate> all;
    all.reserve(sos_.size());
    sos_.for_each([&](const SemiOrderedSummary::Node& nd, std::uint64_t c) {
      all.push_back({nd.id, nd.remainder + step_ * c, nd.last_update});
    });
    return select_top(std::move(all), m);
  }

  const FastStats& fast_stats() const noexcept { return st_; }
  EstimatorStats stats() const { return {st_.processed, st_.evictions, sos_.size(), sos_.capacity()}; }
  std::string name() const { return "FAST"; }
  const SemiOrderedSummary& summary() const noexcept { return sos_; }

 private:
  static FastConfig validated(FastConfig cfg) {
    if (cfg.max_weight < 1) throw InvalidArgument("max_weight must be >= 1");
    if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0) throw InvalidArgument("epsilon must be in (0, 1]");
    if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma))
      throw InvalidArgument("gamma must be a finite value >= 0");
    return cfg;
  }

  static std::size_t resolve_capacity(const FastConfig& cfg) {
    return cfg.capacity ? cfg.capacity : fast_capacity(cfg.epsilon, cfg.gamma);
  }

  std::uint64_t estimate_of(SemiOrderedSummary::Index n) const {
    return sos_.node(n).remainder + step_ * sos_.value_of(n);
  }

  FastConfig cfg_;
  SemiOrderedSummary sos_;
  std::uint64_t step_ = 1;
  FastStats st_;
  std::uint64_t sum_ = 0;
};

}  // namespace flowvol
