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


// Measurement protocols: on-arrival MSE, top-k recall/precision with
// convergence checkpoints, memory-update counts, throughput.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "flowvol/bench/oracle.hpp"
#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol::bench {

template <class E>
bool can_query(const E& e) {
  if constexpr (std::is_same_v<E, AnyEstimator>)
    return e.supports_query();
  else
    return FrequencyEstimator<E>;
}

template <class E>
bool can_top_k(const E& e) {
  if constexpr (std::is_same_v<E, AnyEstimator>)
    return e.supports_top_k();
  else
    return TopKEstimator<E>;
}

// --- on-arrival ------------------------------------------------------------

struct OnArrivalResult {
  std::string algorithm;
  std::size_t counters = 0;
  double mse = 0;
  std::uint64_t arrivals = 0;
};

/// For each packet: query, compare with the exact volume so far, then add.
template <class E>
OnArrivalResult run_on_arrival(E& est, std::span<const Packet> stream, std::size_t counters = 0) {
  if (!can_query(est)) throw CapabilityError(est.name() + " does not answer point queries");
  ExactOracle oracle;
  long double sum = 0;
  for (const auto& p : stream) {
    const long double err = static_cast<long double>(static_cast<std::int64_t>(est.query(p.id))) -
                            static_cast<long double>(oracle.query(p.id));
    sum += err * err;
    est.add(p);
    oracle.add(p);
  }
  OnArrivalResult r;
  r.algorithm = est.name();
  r.counters = counters;
  r.arrivals = stream.size();
  r.mse = stream.empty() ? 0.0 : static_cast<double>(sum / static_cast<long double>(stream.size()));
  return r;
}

// --- top-k -----------------------------------------------------------------

struct PrecisionRecallPoint {
  std::size_t m = 0;
  double precision = 0;
  double recall = 0;
};

struct TopKPoint {
  std::uint64_t position = 0;
  double recall = 0;
  double precision = 0;
  double trailing_recall = 0;  // mean recall over checkpoints so far
};

struct TopKResult {
  std::string algorithm;
  std::size_t counters = 0;
  TopKQuery query;
  std::vector<TopKPoint> series;
  std::vector<PrecisionRecallPoint> pr_curve;  // at the final position
  double final_recall = 0;
  double final_precision = 0;
  std::uint64_t replaced = 0;
};

/// Powers of two up to n, plus n itself.
inline std::vector<std::uint64_t> default_checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < n; c *= 2) out.push_back(c);
  if (n > 0) out.push_back(n);
  return out;
}

/// Hits are candidates whose exact volume is at least F_k. k is capped at
/// the number of distinct flows seen; recall is capped at 1.
inline PrecisionRecallPoint score_candidates(const std::vector<Candidate>& cands,
                                             const ExactOracle& oracle, std::size_t k) {
  PrecisionRecallPoint pt;
  pt.m = cands.size();
  const std::size_t k_eff = std::min(k, oracle.distinct());
  if (k_eff == 0) return pt;
  const std::uint64_t fk = oracle.kth_largest(k_eff);
  std::size_t hits = 0;
  for (const auto& c : cands) hits += oracle.query(c.id) >= fk;
  pt.precision = cands.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(cands.size());
  pt.recall = static_cast<double>(std::min(hits, k_eff)) / static_cast<double>(k_eff);
  return pt;
}

/// Precision/recall for every prefix of the ranked candidate list.
inline std::vector<PrecisionRecallPoint> pr_sweep(const std::vector<Candidate>& ranked,
                                                  const ExactOracle& oracle, std::size_t k) {
  std::vector<PrecisionRecallPoint> out;
  const std::size_t k_eff = std::min(k, oracle.distinct());
  if (k_eff == 0) return out;
  const std::uint64_t fk = oracle.kth_largest(k_eff);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    hits += oracle.query(ranked[i].id) >= fk;
    out.push_back({i + 1, static_cast<double>(hits) / static_cast<double>(i + 1),
                   static_cast<double>(std::min(hits, k_eff)) / static_cast<double>(k_eff)});
  }
  return out;
}

template <class E>
TopKResult run_topk_impl(E& est, std::span<const Packet> stream, TopKQuery q,
                         std::vector<std::uint64_t> checkpoints, std::size_t counters,
                         bool with_pr_curve) {
  if (!can_top_k(est)) throw CapabilityError(est.name() + " does not support top-k queries");
  if (q.k == 0 || q.m == 0) throw InvalidArgument("k and m must be >= 1");
  if (checkpoints.empty()) checkpoints = default_checkpoints(stream.size());
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  TopKResult r;
  r.algorithm = est.name();
  r.counters = counters;
  r.query = q;
  ExactOracle oracle;
  double recall_sum = 0;
  std::size_t next = 0;
  while (next < checkpoints.size() && checkpoints[next] == 0) ++next;
  for (std::uint64_t t = 0; t < stream.size(); ++t) {
    est.add(stream[t]);
    oracle.add(stream[t]);
    if (next < checkpoints.size() && checkpoints[next] == t + 1) {
      const auto pt = score_candidates(est.top_candidates(q.m).items, oracle, q.k);
      recall_sum += pt.recall;
      r.series.push_back({t + 1, pt.recall, pt.precision,
                          recall_sum / static_cast<double>(r.series.size() + 1)});
      ++next;
    }
  }
  const auto final_pt = score_candidates(est.top_candidates(q.m).items, oracle, q.k);
  r.final_recall = final_pt.recall;
  r.final_precision = final_pt.precision;
  if (with_pr_curve) {
    const std::size_t occ = est.stats().occupied;
    r.pr_curve = pr_sweep(est.top_candidates(occ).items, oracle, q.k);
  }
  r.replaced = est.stats().replaced;
  return r;
}

template <class E>
TopKResult run_topk(E& est, std::span<const Packet> stream, TopKQuery q,
                    std::vector<std::uint64_t> checkpoints = {}, std::size_t counters = 0,
                    bool with_pr_curve = true) {
  if constexpr (!std::is_same_v<E, AnyEstimator> && !TopKEstimator<E>) {
    throw CapabilityError(est.name() + " does not support top-k queries");
  } else {
    return run_topk_impl(est, stream, q, std::move(checkpoints), counters, with_pr_curve);
  }
}

// --- memory updates --------------------------------------------------------

template <class E>
std::uint64_t count_memory_updates(E& est, std::span<const Packet> stream) {
  for (const auto& p : stream) est.add(p);
  return est.stats().replaced;
}

// --- throughput ------------------------------------------------------------

struct ThroughputResult {
  std::string algorithm;
  double median_ops = 0;  // packets per second
  double min_ops = 0;
  double max_ops = 0;
  std::vector<double> samples;
};

/// Builds a fresh estimator per repetition and times a full pass over the
/// stream. A short untimed pass warms caches and the allocator first.
template <class Factory>
ThroughputResult measure_throughput(Factory&& make, std::span<const Packet> stream,
                                    std::size_t repetitions = 3) {
  if (repetitions < 3) throw InvalidArgument("throughput needs at least 3 repetitions");
  if (stream.empty()) throw InvalidArgument("throughput needs a non-empty stream");
  ThroughputResult r;
  {
    auto warm = make();
    r.algorithm = warm.name();
    const std::size_t n = std::min<std::size_t>(stream.size(), 1u << 16);
    for (std::size_t i = 0; i < n; ++i) warm.add(stream[i]);
  }
  volatile std::uint64_t sink = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    auto est = make();
    const auto start = std::chrono::steady_clock::now();
    for (const auto& p : stream) est.add(p);
    const auto stop = std::chrono::steady_clock::now();
    sink = sink + est.stats().processed;
    const double secs = std::chrono::duration<double>(stop - start).count();
    r.samples.push_back(static_cast<double>(stream.size()) / std::max(secs, 1e-12));
  }
  auto sorted = r.samples;
  std::sort(sorted.begin(), sorted.end());
  r.min_ops = sorted.front();
  r.max_ops = sorted.back();
  r.median_ops = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                   : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2;
  return r;
}

// --- windows ---------------------------------------------------------------

struct WindowAccuracy {
  std::uint64_t arrivals = 0;
  double mean_error = 0;       // mean (estimate - truth) on arrival, after the add
  std::uint64_t max_error = 0;
  std::uint64_t violations = 0;  // outside [truth, truth + W*M*eps]
};

/// `est` must expose winquery(); `slack` is the permitted additive error.
template <class W>
WindowAccuracy run_window(W& est, std::span<const Packet> stream, std::uint64_t window,
                          double slack) {
  WindowOracle oracle(window);
  WindowAccuracy r;
  long double sum = 0;
  for (const auto& p : stream) {
    est.add(p);
    oracle.add(p);
    const std::uint64_t q = est.winquery(p.id);
    const std::uint64_t v = oracle.query(p.id);
    if (q < v || static_cast<double>(q - v) > slack) ++r.violations;
    const std::uint64_t err = q >= v ? q - v : v - q;
    r.max_error = std::max(r.max_error, err);
    sum += static_cast<long double>(err);
  }
  r.arrivals = stream.size();
  r.mean_error = stream.empty() ? 0.0 : static_cast<double>(sum / stream.size());
  return r;
}

}  // namespace flowvol::bench
