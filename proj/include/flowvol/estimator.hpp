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
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flowvol/common.hpp"

namespace flowvol {

/// Counters exposed by every estimator. `replaced` counts id-replacement
/// events (a tracked flow losing its slot to another flow).
struct EstimatorStats {
  std::uint64_t processed = 0;
  std::uint64_t replaced = 0;
  std::size_t occupied = 0;
  std::size_t capacity = 0;
};

struct TopKQuery {
  std::size_t k = 1;
  std::size_t m = 1;
};

struct Candidate {
  FlowId id = 0;
  std::uint64_t estimate = 0;
  std::uint64_t last_update = 0;
};

struct TopCandidates {
  std::vector<Candidate> items;  // descending by estimate
  bool short_list = false;       // fewer than m entries were tracked
};

/// Picks the m largest entries; ties go to the most recently updated.
inline TopCandidates select_top(std::vector<Candidate> all, std::size_t m) {
  TopCandidates out;
  out.short_list = m > all.size();
  const std::size_t take = std::min(m, all.size());
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.estimate != b.estimate) return a.estimate > b.estimate;
    if (a.last_update != b.last_update) return a.last_update > b.last_update;
    return a.id < b.id;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), better);
  all.resize(take);
  out.items = std::move(all);
  return out;
}

/// Anything that consumes packets and reports stats.
template <class E>
concept StreamConsumer = requires(E e, const E ce, Packet p) {
  e.add(p);
  { ce.stats() } -> std::same_as<EstimatorStats>;
  { ce.name() } -> std::convertible_to<std::string>;
};

/// Point queries. Estimates are integral; Count Sketch may go negative.
template <class E>
concept FrequencyEstimator = StreamConsumer<E> && requires(const E ce, FlowId id) {
  { ce.query(id) } -> std::integral;
};

/// Estimators that track flow ids declare kSupportsTopK = true and
/// implement top_candidates(m).
template <class E>
inline constexpr bool supports_top_k_v = requires { requires E::kSupportsTopK; };

template <class E>
concept TopKEstimator = FrequencyEstimator<E> && supports_top_k_v<E> &&
                        requires(const E ce, std::size_t m) {
                          { ce.top_candidates(m) } -> std::same_as<TopCandidates>;
                        };

/// Type-erased estimator for runtime-configured experiments.
class AnyEstimator {
 public:
  AnyEstimator() = default;

  template <StreamConsumer E>
  explicit AnyEstimator(E est) : impl_(std::make_unique<Model<E>>(std::move(est))) {}

  explicit operator bool() const noexcept { return impl_ != nullptr; }

  void add(const Packet& p) { impl_->add(p); }
  std::int64_t query(FlowId id) const { return impl_->query(id); }
  EstimatorStats stats() const { return impl_->stats(); }
  std::string name() const { return impl_->name(); }
  bool supports_top_k() const { return impl_->supports_top_k(); }
  bool supports_query() const { return impl_->supports_query(); }

  /// Throws CapabilityError when the estimator does not track ids.
  TopCandidates top_candidates(std::size_t m) const { return impl_->top_candidates(m); }

  ~AnyEstimator() = default;
  AnyEstimator(AnyEstimator&&) noexcept = default;
  AnyEstimator& operator=(AnyEstimator&&) noexcept = default;

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual void add(const Packet& p) = 0;
    virtual std::int64_t query(FlowId id) const = 0;
    virtual EstimatorStats stats() const = 0;
    virtual std::string name() const = 0;
    virtual bool supports_top_k() const = 0;
    virtual bool supports_query() const = 0;
    virtual TopCandidates top_candidates(std::size_t m) const = 0;
  };

  template <class E>
  struct Model final : Concept {
    explicit Model(E e) : est(std::move(e)) {}
    void add(const Packet& p) override { est.add(p); }
    std::int64_t query(FlowId id) const override {
      if constexpr (FrequencyEstimator<E>)
        return static_cast<std::int64_t>(est.query(id));
      else
        throw CapabilityError(est.name() + " does not answer point queries");
    }
    EstimatorStats stats() const override { return est.stats(); }
    std::string name() const override { return est.name(); }
    bool supports_top_k() const override { return supports_top_k_v<E>; }
    bool supports_query() const override { return FrequencyEstimator<E>; }
    TopCandidates top_candidates(std::size_t m) const override {
      if constexpr (TopKEstimator<E>)
        return est.top_candidates(m);
      else
        throw CapabilityError(est.name() + " does not support top-k queries");
    }
    E est;
  };

  std::unique_ptr<Concept> impl_;
};

}  // namespace flowvol
