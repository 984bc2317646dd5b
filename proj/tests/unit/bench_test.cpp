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


#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "flowvol/bench/metrics.hpp"
#include "flowvol/bench/oracle.hpp"
#include "flowvol/bench/pool.hpp"
#include "flowvol/bench/report.hpp"
#include "flowvol/bench/ssh.hpp"
#include "flowvol/counters.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/wfast.hpp"

namespace fv = flowvol;
namespace fb = flowvol::bench;

namespace {

// Answers truth + 1 for every id.
class OffByOne {
 public:
  void add(const fv::Packet& p) { o_.add(p); }
  std::uint64_t query(fv::FlowId id) const { return o_.query(id) + 1; }
  fv::EstimatorStats stats() const { return o_.stats(); }
  std::string name() const { return "OFF1"; }

 private:
  fb::ExactOracle o_;
};

// Reports its exact counts as top-k candidates.
class ExactTopK {
 public:
  static constexpr bool kSupportsTopK = true;
  void add(const fv::Packet& p) { o_.add(p); }
  std::uint64_t query(fv::FlowId id) const { return o_.query(id); }
  fv::TopCandidates top_candidates(std::size_t m) const {
    std::vector<fv::Candidate> all;
    for (auto& [id, c] : o_.counts()) all.push_back({id, c, 0});
    return fv::select_top(std::move(all), m);
  }
  fv::EstimatorStats stats() const { return {o_.processed(), 0, o_.distinct(), o_.distinct()}; }
  std::string name() const { return "EXACTK"; }

 private:
  fb::ExactOracle o_;
};

}  // namespace

TEST(OnArrival, ExactOracleHasZeroError) {
  auto s = fv::zipf_generate({1.0, 1000, 20000, 4}, fv::uniform_weights(9));
  fb::ExactOracle o;
  EXPECT_EQ(fb::run_on_arrival(o, s).mse, 0.0);
}

TEST(OnArrival, ConstantOffsetGivesUnitMse) {
  auto s = fv::zipf_generate({0.8, 1000, 5000, 4});
  OffByOne e;
  EXPECT_DOUBLE_EQ(fb::run_on_arrival(e, s).mse, 1.0);
}

TEST(OnArrival, QueriesBeforeAdd) {
  // a lone packet is measured against volume 0
  std::vector<fv::Packet> s{{5, 3}};
  OffByOne e;
  EXPECT_DOUBLE_EQ(fb::run_on_arrival(e, s).mse, 1.0);
}

TEST(OnArrival, SpaceSavingMseIsPositiveWhenOverloaded) {
  auto s = fv::zipf_generate({0.6, 100000, 50000, 4});
  fv::SpaceSaving ss(64);
  EXPECT_GT(fb::run_on_arrival(ss, s).mse, 0.0);
}

TEST(TopK, ExactEstimatorScoresPerfectly) {
  auto s = fv::zipf_generate({1.0, 5000, 30000, 2});
  ExactTopK e;
  auto r = fb::run_topk(e, s, {32, 32});
  EXPECT_DOUBLE_EQ(r.final_recall, 1.0);
  EXPECT_DOUBLE_EQ(r.final_precision, 1.0);
  for (const auto& pt : r.series) EXPECT_DOUBLE_EQ(pt.recall, 1.0) << pt.position;
  ASSERT_FALSE(r.pr_curve.empty());
  EXPECT_DOUBLE_EQ(r.pr_curve[31].precision, 1.0);
  EXPECT_DOUBLE_EQ(r.pr_curve[31].recall, 1.0);
}

TEST(TopK, CheckpointsArePowersOfTwoPlusEnd) {
  EXPECT_EQ(fb::default_checkpoints(10), (std::vector<std::uint64_t>{1, 2, 4, 8, 10}));
  EXPECT_EQ(fb::default_checkpoints(8), (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_TRUE(fb::default_checkpoints(0).empty());
}

TEST(TopK, RecallIsAtMostOneWithTies) {
  // every flow ties at volume 1 so all candidates are hits
  std::vector<fv::Packet> s;
  for (fv::FlowId i = 1; i <= 100; ++i) s.push_back({i, 1});
  fv::SpaceSaving ss(200);
  auto r = fb::run_topk(ss, s, {10, 50});
  EXPECT_DOUBLE_EQ(r.final_recall, 1.0);
  EXPECT_DOUBLE_EQ(r.final_precision, 1.0);
}

TEST(TopK, FewerFlowsThanKCapsK) {
  std::vector<fv::Packet> s{{1, 1}, {2, 1}, {1, 1}};
  fv::SpaceSaving ss(8);
  auto r = fb::run_topk(ss, s, {32, 32});
  EXPECT_DOUBLE_EQ(r.final_recall, 1.0);
}

TEST(TopK, PrCurveCoversOccupancy) {
  auto s = fv::zipf_generate({1.0, 5000, 20000, 3});
  fv::SpaceSaving ss(100);
  auto r = fb::run_topk(ss, s, {32, 32});
  ASSERT_EQ(r.pr_curve.size(), 100u);
  EXPECT_EQ(r.pr_curve.back().m, 100u);
  for (std::size_t i = 1; i < r.pr_curve.size(); ++i)
    EXPECT_GE(r.pr_curve[i].recall, r.pr_curve[i - 1].recall);
}

TEST(TopK, SketchIsRejected) {
  auto s = fv::zipf_generate({1.0, 100, 100, 3});
  fb::ExactOracle o;
  EXPECT_THROW(fb::run_topk(o, s, {4, 4}), fv::CapabilityError);
}

TEST(MemoryUpdates, AllDistinctStream) {
  std::vector<fv::Packet> s;
  for (fv::FlowId i = 1; i <= 1000; ++i) s.push_back({i, 1});
  fv::SpaceSaving ss(10);
  EXPECT_EQ(fb::count_memory_updates(ss, s), 990u);
}

TEST(MemoryUpdates, NoReplacementWhenFlowsFit) {
  auto s = fv::zipf_generate({1.0, 50, 10000, 3});
  fv::SpaceSaving ss(64);
  fv::Frequent fr(64);
  fv::ProbabilisticSpaceSaving pss(64, 3);
  fb::HeapSpaceSaving ssh(64);
  EXPECT_EQ(fb::count_memory_updates(ss, s), 0u);
  EXPECT_EQ(fb::count_memory_updates(fr, s), 0u);
  EXPECT_EQ(fb::count_memory_updates(pss, s), 0u);
  EXPECT_EQ(fb::count_memory_updates(ssh, s), 0u);
}

TEST(Throughput, NeedsThreeRepetitions) {
  auto s = fv::zipf_generate({1.0, 100, 1000, 3});
  auto make = [] { return fv::SpaceSaving(16); };
  EXPECT_THROW(fb::measure_throughput(make, s, 2), fv::InvalidArgument);
  auto r = fb::measure_throughput(make, s, 3);
  EXPECT_EQ(r.samples.size(), 3u);
  EXPECT_LE(r.min_ops, r.median_ops);
  EXPECT_LE(r.median_ops, r.max_ops);
  EXPECT_GT(r.min_ops, 0.0);
}

TEST(HeapSpaceSaving, MatchesSpaceSavingBounds) {
  auto s = fv::zipf_generate({1.1, 5000, 50000, 8}, fv::uniform_weights(20));
  fb::HeapSpaceSaving h(100);
  fb::ExactOracle o;
  std::uint64_t volume = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    h.add(s[t]);
    o.add(s[t]);
    volume += s[t].weight;
    if (t % 1000 == 0) {
      ASSERT_TRUE(h.audit());
      for (auto& [id, v] : o.counts()) {
        const auto q = h.query(id);
        ASSERT_GE(q, v);
        ASSERT_LE(q, v + volume / 100);
      }
    }
  }
}

TEST(HeapSpaceSaving, WeightedEqualsRepeatedUnitCounts) {
  fb::HeapSpaceSaving a(4), b(4);
  std::vector<fv::Packet> s{{1, 3}, {2, 2}, {3, 1}, {4, 5}, {5, 2}, {1, 1}};
  for (auto p : s) {
    a.add(p);
    // one unit-weight packet and the rest as a hit on the same id
    b.add({p.id, 1});
    if (p.weight > 1) b.add({p.id, p.weight - 1});
  }
  for (fv::FlowId id = 1; id <= 5; ++id) EXPECT_EQ(a.query(id), b.query(id)) << id;
}

TEST(Csv, RoundTrip) {
  std::vector<fb::ResultRow> rows{{0, "SS", 64, "recall", 1, 0.5},
                                  {1, "16W-PSS", 128, "mse", 0.6, 1234.25},
                                  {2, "PSS", 64, "ratio", 3, 1.0 / 3}};
  const auto text = fb::to_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), std::string(fb::kCsvHeader));
  EXPECT_EQ(fb::parse_csv(text), rows);
  EXPECT_EQ(fb::to_csv(fb::parse_csv(text)), text);
}

TEST(Csv, IntegralValuesHaveNoFraction) {
  EXPECT_EQ(fb::format_number(990), "990");
  EXPECT_EQ(fb::format_number(0.25), "0.25");
  EXPECT_EQ(fb::format_number(-3), "-3");
}

TEST(Csv, SchemaMismatchIsRejected) {
  EXPECT_THROW(fb::parse_csv("run,algorithm,value\n0,SS,1\n"), fv::ParseError);
  EXPECT_THROW(fb::parse_csv(""), fv::ParseError);
  EXPECT_THROW(fb::parse_csv(std::string(fb::kCsvHeader) + "\n0,SS,64,recall,1\n"), fv::ParseError);
  EXPECT_THROW(fb::parse_csv(std::string(fb::kCsvHeader) + "\nx,SS,64,recall,1,1\n"), fv::ParseError);
}

TEST(Pool, EveryIndexRunsOnceInAnyThreadCount) {
  for (std::size_t threads : {1u, 2u, 4u}) {
    std::vector<int> hits(100, 0);
    auto errs = fb::run_parallel(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    EXPECT_EQ(std::accumulate(hits.begin(), hits.end(), 0), 100);
    for (int h : hits) EXPECT_EQ(h, 1);
    for (auto& e : errs) EXPECT_FALSE(e);
  }
}

TEST(Pool, ExceptionsStayWithTheirTask) {
  auto errs = fb::run_parallel(5, 2, [](std::size_t i) {
    if (i == 3) throw std::runtime_error("boom");
  });
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(static_cast<bool>(errs[i]), i == 3);
}

TEST(WindowRunner, WfastHasNoViolations) {
  auto s = fv::zipf_generate({1.0, 300, 8000, 5}, fv::uniform_weights(7));
  fv::WindowedFast w({512, 7, 0.25, 1.0});
  const double slack = double(w.effective_window()) * 7 * 0.25;
  auto r = fb::run_window(w, s, w.effective_window(), slack);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.arrivals, s.size());
  EXPECT_LE(double(r.max_error), slack);
}

TEST(WindowRunner, ExactOracleWindow) {
  fb::WindowOracle o(3);
  for (fv::FlowId id : {1, 1, 2, 1, 3}) o.add({id, 2});
  EXPECT_EQ(o.query(1), 2u);
  EXPECT_EQ(o.query(2), 2u);
  EXPECT_EQ(o.query(3), 2u);
}

TEST(ExactOracle, KthLargest) {
  fb::ExactOracle o;
  for (auto [id, w] : std::vector<std::pair<fv::FlowId, std::uint32_t>>{{1, 5}, {2, 3}, {3, 9}})
    o.add({id, w});
  EXPECT_EQ(o.kth_largest(1), 9u);
  EXPECT_EQ(o.kth_largest(2), 5u);
  EXPECT_EQ(o.kth_largest(3), 3u);
  EXPECT_EQ(o.kth_largest(10), 3u);
}
