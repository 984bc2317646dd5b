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


// Expands an ExperimentConfig into runs, executes them (optionally in
// parallel) and collects result rows in run order.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowvol/bench/metrics.hpp"
#include "flowvol/bench/pool.hpp"
#include "flowvol/bench/report.hpp"
#include "flowvol/bench/ssh.hpp"
#include "flowvol/cli/config.hpp"
#include "flowvol/counters.hpp"
#include "flowvol/dwpss.hpp"
#include "flowvol/fast.hpp"
#include "flowvol/hhh.hpp"
#include "flowvol/sketches.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/trace_io.hpp"
#include "flowvol/wfast.hpp"

namespace flowvol::cli {

using bench::ResultRow;

/// One input stream: a loaded file or a synthetic trace for (skew, seed).
struct TraceInput {
  double skew = 0;
  std::uint64_t seed = 0;
  std::vector<Packet> packets;
  std::vector<AddressPacket> addresses;
  StreamDescriptor descriptor;
};

struct RunRecord {
  std::uint64_t run_id = 0;
  std::string algorithm;
  std::uint64_t counters = 0;
  std::uint64_t seed = 0;
  double skew = 0;
  double epsilon = 0;
  std::uint64_t window = 0;
  bool ok = true;
  std::string error;
};

struct BenchOutput {
  std::vector<ResultRow> rows;
  std::vector<ResultRow> throughput;
  std::vector<RunRecord> runs;
  std::vector<std::string> pattern_names;  // hhh mode
  std::vector<std::string> warnings;
  std::size_t failed = 0;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

/// Estimator randomness is derived from the trace seed and the label, so a
/// run is reproducible on its own.
inline std::uint64_t estimator_seed(std::uint64_t seed, const std::string& label,
                                    std::uint64_t budget) {
  return seeded_hash(fnv1a(label) ^ budget, seed);
}

inline std::string with_skew(std::string label, const ExperimentConfig& c, double skew) {
  // frequency rows already carry the skew as x
  if (c.mode != Mode::Frequency && c.trace.empty() && c.skews.size() > 1)
    label += "@zipf" + bench::format_number(skew);
  return label;
}

struct Job {
  std::size_t trace = 0;
  AlgorithmSpec algo;
  std::uint64_t budget = 0;
  std::uint64_t window = 0;
  double epsilon = 0;
};

}  // namespace detail

/// Builds a point/top-k estimator for a counter budget.
inline AnyEstimator make_estimator(const AlgorithmSpec& a, std::uint64_t budget,
                                   const ExperimentConfig& c, std::uint32_t max_weight,
                                   std::uint64_t seed) {
  const auto cap = static_cast<std::size_t>(budget);
  switch (a.kind) {
    case Kind::SS: return AnyEstimator(SpaceSaving(cap));
    case Kind::FR: return AnyEstimator(Frequent(cap));
    case Kind::PSS: return AnyEstimator(ProbabilisticSpaceSaving(cap, seed));
    case Kind::HalfPSS: return AnyEstimator(ProbabilisticSpaceSaving(std::max<std::size_t>(1, cap / 2), seed));
    case Kind::DWPSS: return AnyEstimator(SetAssociativePss(cap, a.ways, seed));
    case Kind::CMS:
    case Kind::CS: {
      const auto width = std::max<std::size_t>(
          1, static_cast<std::size_t>(static_cast<double>(budget) * c.sketch_factor /
                                      static_cast<double>(c.rows)));
      if (a.kind == Kind::CMS) return AnyEstimator(CountMinSketch(c.rows, width, seed));
      return AnyEstimator(CountSketch(c.rows, width, seed));
    }
    case Kind::FAST: {
      FastConfig f;
      f.max_weight = max_weight;
      f.gamma = c.gamma;
      f.capacity = cap;
      f.epsilon = std::min(1.0, (1.0 + c.gamma) / static_cast<double>(budget));
      return AnyEstimator(Fast(f));
    }
    case Kind::SSH: return AnyEstimator(bench::HeapSpaceSaving(cap));
    default: break;
  }
  throw CapabilityError(a.label + " is not a point-query estimator");
}

/// Loads or synthesizes all input traces. Throws on unreadable files.
inline std::vector<TraceInput> load_traces(const ExperimentConfig& c) {
  std::vector<TraceInput> out;
  const bool hhh = c.mode == Mode::Hhh;
  if (!c.trace.empty()) {
    TraceInput t;
    if (hhh) {
      t.addresses = read_address_trace(c.trace);
      t.descriptor.length = t.addresses.size();
      for (const auto& p : t.addresses) t.descriptor.max_weight = std::max(t.descriptor.max_weight, p.weight);
    } else {
      auto tr = read_trace(c.trace);
      t.packets = std::move(tr.packets);
      t.descriptor = tr.descriptor;
    }
    out.push_back(std::move(t));
    return out;
  }
  for (double skew : c.skews)
    for (auto seed : c.seeds) {
      TraceInput t;
      t.skew = skew;
      t.seed = seed;
      if (hhh) {
        t.addresses = generate_address_trace({skew, c.length, c.max_weight, seed});
        t.descriptor = {c.length, c.max_weight};
      } else {
        WeightSampler w;
        if (c.max_weight > 1) w = uniform_weights(c.max_weight);
        t.packets = zipf_generate({skew, c.universe, c.length, seed}, std::move(w));
        t.descriptor = {c.length, c.max_weight};
      }
      out.push_back(std::move(t));
    }
  return out;
}

namespace detail {

struct JobResult {
  std::vector<ResultRow> rows;
  std::vector<ResultRow> throughput;
  RunRecord record;
  std::string warning;
};

inline void run_point(const ExperimentConfig& c, const TraceInput& t, const Job& j,
                      std::uint64_t est_seed, JobResult& r) {
  const auto label = with_skew(j.algo.label, c, t.skew);
  auto push = [&](std::vector<ResultRow>& v, const std::string& metric, double x, double value) {
    v.push_back({r.record.run_id, label, j.budget, metric, x, value});
  };
  const std::uint32_t m = t.descriptor.max_weight;
  auto est = make_estimator(j.algo, j.budget, c, m, est_seed);
  if (c.mode == Mode::Frequency) {
    const auto res = bench::run_on_arrival(est, t.packets, j.budget);
    push(r.rows, "mse", t.skew, res.mse);
    push(r.rows, "replaced", t.skew, static_cast<double>(est.stats().replaced));
    if (c.throughput_reps > 0 && !t.packets.empty()) {
      const auto tp = bench::measure_throughput(
          [&] { return make_estimator(j.algo, j.budget, c, m, est_seed); }, t.packets,
          c.throughput_reps);
      push(r.throughput, "ops_per_sec_median", t.skew, tp.median_ops);
      push(r.throughput, "ops_per_sec_min", t.skew, tp.min_ops);
      push(r.throughput, "ops_per_sec_max", t.skew, tp.max_ops);
    }
    return;
  }
  const auto res = bench::run_topk(est, t.packets, {c.k, c.m}, {}, j.budget, c.pr_curve);
  for (const auto& pt : res.series) {
    const double x = static_cast<double>(pt.position);
    push(r.rows, "recall", x, pt.recall);
    push(r.rows, "precision", x, pt.precision);
    push(r.rows, "recall_avg", x, pt.trailing_recall);
  }
  for (const auto& pt : res.pr_curve) {
    push(r.rows, "pr_precision", static_cast<double>(pt.m), pt.precision);
    push(r.rows, "pr_recall", static_cast<double>(pt.m), pt.recall);
  }
  push(r.rows, "final_recall", t.skew, res.final_recall);
  push(r.rows, "final_precision", t.skew, res.final_precision);
  push(r.rows, "replaced", t.skew, static_cast<double>(res.replaced));
}

inline void run_window_job(const ExperimentConfig& c, const TraceInput& t, const Job& j,
                           JobResult& r) {
  WindowConfig wc{j.window, t.descriptor.max_weight, j.epsilon, c.gamma};
  WindowedFast w(wc);
  if (w.was_rounded())
    r.warning = "warning: window " + std::to_string(j.window) + " rounded up to " +
                std::to_string(w.effective_window()) + " (a multiple of k=" +
                std::to_string(w.blocks()) + ")";
  const double slack = static_cast<double>(w.effective_window()) * wc.max_weight * j.epsilon;
  const auto acc = bench::run_window(w, t.packets, w.effective_window(), slack);
  const auto label = with_skew("WFAST(eps=" + bench::format_number(j.epsilon) + ")", c, t.skew);
  const double x = static_cast<double>(j.window);
  const auto cap = w.frame_counter().capacity();
  r.record.algorithm = label;
  r.record.counters = cap;
  auto push = [&](const std::string& metric, double value) {
    r.rows.push_back({r.record.run_id, label, cap, metric, x, value});
  };
  const double scale = static_cast<double>(w.effective_window()) * wc.max_weight;
  push("effective_window", static_cast<double>(w.effective_window()));
  push("mean_error", acc.mean_error);
  push("max_error", static_cast<double>(acc.max_error));
  push("max_error_ratio", static_cast<double>(acc.max_error) / scale);
  push("violations", static_cast<double>(acc.violations));
  push("overflows", static_cast<double>(w.window_stats().overflows));
  push("max_queued", static_cast<double>(w.window_stats().max_queued));
}

inline void run_hhh_job(const ExperimentConfig& c, const TraceInput& t, JobResult& r) {
  FastConfig f;
  f.max_weight = t.descriptor.max_weight;
  f.epsilon = c.epsilon;
  f.gamma = c.gamma;
  HierarchicalFast h(Hierarchy::ipv4_bytes(c.hhh_dims), f);
  const auto& hier = h.hierarchy();
  std::vector<std::unordered_map<FlowId, std::uint64_t>> exact(hier.size());
  for (const auto& p : t.addresses) {
    h.add(p);
    for (std::size_t i = 0; i < hier.size(); ++i) exact[i][hier.key(i, p.src, p.dst)] += p.weight;
  }
  const double threshold = static_cast<double>(h.processed()) * f.max_weight * c.theta;
  const auto items = h.query_hhh(c.theta, c.include_root);
  const auto label = with_skew("HFAST", c, t.skew);
  const auto cap = h.level(0).capacity();
  r.record.algorithm = label;
  r.record.counters = cap;
  auto push = [&](const std::string& metric, double x, double value) {
    r.rows.push_back({r.record.run_id, label, cap, metric, x, value});
  };
  std::size_t all_true = 0, all_hit = 0;
  for (std::size_t i = 0; i < hier.size(); ++i) {
    if (!c.include_root && hier.is_root(i)) continue;
    std::size_t reported = 0, fp = 0, hits = 0, truth = 0;
    for (const auto& it : items) {
      if (it.pattern != i) continue;
      ++reported;
      const bool heavy = static_cast<double>(exact[i][it.key]) >= threshold;
      heavy ? ++hits : ++fp;
    }
    for (const auto& [key, v] : exact[i]) truth += static_cast<double>(v) >= threshold;
    const double x = static_cast<double>(i);
    push("reported", x, static_cast<double>(reported));
    push("true_hhh", x, static_cast<double>(truth));
    push("missed", x, static_cast<double>(truth - hits));
    push("false_positive", x, static_cast<double>(fp));
    all_true += truth;
    all_hit += hits;
  }
  push("recall", 0, all_true ? static_cast<double>(all_hit) / static_cast<double>(all_true) : 1.0);
  push("precision", 0, items.empty() ? 1.0 : static_cast<double>(all_hit) / static_cast<double>(items.size()));
  push("instance_updates", 0, static_cast<double>(h.instance_updates()));
}

}  // namespace detail

/// Runs every (trace, algorithm, budget) combination. Failed runs are
/// recorded and skipped; the remaining rows are unaffected.
inline BenchOutput run_experiments(const ExperimentConfig& c, std::ostream* log = nullptr) {
  validate(c);
  const auto algos = resolve_algorithms(c);
  const auto traces = load_traces(c);

  std::vector<detail::Job> jobs;
  for (std::size_t t = 0; t < traces.size(); ++t)
    for (const auto& a : algos) {
      switch (c.mode) {
        case Mode::Frequency:
        case Mode::TopK:
          for (auto b : c.counters) jobs.push_back({t, a, b, 0, 0});
          break;
        case Mode::Window:
          for (auto w : c.windows)
            for (double e : c.epsilons) jobs.push_back({t, a, 0, w, e});
          break;
        case Mode::Hhh: jobs.push_back({t, a, 0, 0, c.epsilon}); break;
      }
    }

  std::vector<detail::JobResult> results(jobs.size());
  std::mutex log_mu;
  auto task = [&](std::size_t i) {
    const auto& j = jobs[i];
    const auto& t = traces[j.trace];
    auto& r = results[i];
    r.record = {i, j.algo.label, j.budget, c.trace.empty() ? t.seed : c.seeds.front(), t.skew,
                j.epsilon, j.window, true, {}};
    try {
      if (!supports_mode(j.algo.kind, c.mode))
        throw CapabilityError(j.algo.label + " does not support " + to_string(c.mode) + " mode");
      if (c.mode == Mode::Window) {
        detail::run_window_job(c, t, j, r);
      } else if (c.mode == Mode::Hhh) {
        detail::run_hhh_job(c, t, r);
      } else {
        // file traces reuse the first seed for estimator randomness
        const auto seed = detail::estimator_seed(r.record.seed, j.algo.label, j.budget);
        detail::run_point(c, t, j, seed, r);
      }
    } catch (const std::exception& e) {
      r.rows.clear();
      r.throughput.clear();
      r.record.ok = false;
      r.record.error = e.what();
    }
    if (log) {
      std::lock_guard lk(log_mu);
      *log << "run " << i + 1 << "/" << jobs.size() << " " << r.record.algorithm;
      if (r.record.counters) *log << " counters=" << r.record.counters;
      *log << " seed=" << r.record.seed << (r.record.ok ? " ok" : " FAILED: " + r.record.error)
           << "\n";
    }
  };
  // Throughput timings are only meaningful without contention.
  const std::size_t threads = c.throughput_reps > 0 ? 1 : c.threads;
  for (auto& e : bench::run_parallel(jobs.size(), threads, task))
    if (e) std::rethrow_exception(e);

  BenchOutput out;
  for (auto& r : results) {
    out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
    out.throughput.insert(out.throughput.end(), r.throughput.begin(), r.throughput.end());
    out.failed += !r.record.ok;
    if (!r.warning.empty() &&
        std::find(out.warnings.begin(), out.warnings.end(), r.warning) == out.warnings.end())
      out.warnings.push_back(r.warning);
    out.runs.push_back(std::move(r.record));
  }
  if (c.mode == Mode::Hhh) {
    const auto h = Hierarchy::ipv4_bytes(c.hhh_dims);
    for (std::size_t i = 0; i < h.size(); ++i) out.pattern_names.push_back(h.pattern_name(i));
  }
  return out;
}

}  // namespace flowvol::cli
