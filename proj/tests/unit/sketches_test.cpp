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

#include <cmath>
#include <unordered_map>
#include <vector>

#include "flowvol/estimator.hpp"
#include "flowvol/sketches.hpp"
#include "flowvol/stream.hpp"

namespace fv = flowvol;

TEST(Sketches, WidthForEpsilon) {
  EXPECT_EQ(fv::width_for_epsilon(1.0 / 1024), 2784u);
  EXPECT_EQ(fv::width_for_epsilon(1.0), 3u);
  EXPECT_THROW(fv::width_for_epsilon(0.0), fv::InvalidArgument);
}

TEST(Sketches, RejectDuplicateSeedsAndEmptyShape) {
  EXPECT_THROW(fv::CountMinSketch(16, {1, 2, 1}), fv::InvalidArgument);
  EXPECT_THROW(fv::CountSketch(16, {5, 5}), fv::InvalidArgument);
  EXPECT_THROW(fv::CountMinSketch(0, 16, 1), fv::InvalidArgument);
  EXPECT_THROW(fv::CountMinSketch(4, 0, 1), fv::InvalidArgument);
  fv::CountMinSketch ok(10, 64, 3);
  EXPECT_EQ(ok.rows(), 10u);
}

TEST(Sketches, SingleIdIsExact) {
  fv::CountMinSketch cms(4, 8, 1);
  fv::CountSketch cs(4, 8, 1);
  EXPECT_EQ(cms.query(9), 0);
  EXPECT_EQ(cs.query(9), 0);
  cms.add({9, 5});
  cs.add({9, 5});
  EXPECT_EQ(cms.query(9), 5);
  EXPECT_EQ(cs.query(9), 5);
  fv::CountMinSketch c2(4, 8, 2);
  fv::CountSketch s2(3, 8, 2);
  for (int i = 0; i < 777; ++i) {
    c2.add({42, 1});
    s2.add({42, 1});
  }
  EXPECT_EQ(c2.query(42), 777);
  EXPECT_EQ(s2.query(42), 777);
}

TEST(CountMin, NeverUnderestimates) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    fv::CountMinSketch cms(4, 64, seed);
    auto s = fv::zipf_generate({0.7, 3000, 20000, seed}, fv::uniform_weights(7));
    std::unordered_map<fv::FlowId, std::int64_t> truth;
    for (const auto& p : s) {
      cms.add(p);
      truth[p.id] += p.weight;
    }
    for (fv::FlowId id = 1; id <= 3000; ++id) ASSERT_GE(cms.query(id), truth[id]);
  }
}

TEST(CountMin, ErrorWithinEpsilonN) {
  const double eps = 1.0 / 1024;
  const std::uint64_t n = 1000000;
  fv::CountMinSketch cms(4, fv::width_for_epsilon(eps), 77);
  auto s = fv::zipf_generate({1.0, 1u << 20, n, 77});
  std::unordered_map<fv::FlowId, std::int64_t> truth;
  for (const auto& p : s) {
    cms.add(p);
    ++truth[p.id];
  }
  std::size_t ok = 0;
  for (auto [id, v] : truth) ok += cms.query(id) - v <= eps * double(n);
  EXPECT_GE(double(ok) / double(truth.size()), 0.99);
}

TEST(CountSketch, UnbiasedOverSeeds) {
  auto s = fv::zipf_generate({1.0, 2000, 20000, 8});
  std::unordered_map<fv::FlowId, std::int64_t> truth;
  for (const auto& p : s) ++truth[p.id];
  const std::vector<fv::FlowId> probes{1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  std::vector<std::vector<double>> est(probes.size());
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    fv::CountSketch cs(5, 64, seed * 1000 + 1);
    for (const auto& p : s) cs.add(p);
    for (std::size_t i = 0; i < probes.size(); ++i) est[i].push_back(double(cs.query(probes[i])));
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double mean = 0, var = 0;
    for (double x : est[i]) mean += x;
    mean /= double(est[i].size());
    for (double x : est[i]) var += (x - mean) * (x - mean);
    var /= double(est[i].size() - 1);
    const double se = std::sqrt(var / double(est[i].size()));
    EXPECT_LE(std::abs(mean - double(truth[probes[i]])), 3 * se + 1e-9) << "probe " << probes[i];
  }
}

TEST(CountSketch, LowerMedianForEvenRows) {
  // Two rows, one id: both readings equal the true count.
  fv::CountSketch cs(2, 4, 3);
  cs.add({1, 10});
  EXPECT_EQ(cs.query(1), 10);
}

TEST(Sketches, CountSketchBeatsCountMinOnHeavyTail) {
  auto s = fv::zipf_generate({0.6, 100000, 100000, 13});
  fv::CountMinSketch cms(4, 256, 13);
  fv::CountSketch cs(4, 256, 13);
  std::unordered_map<fv::FlowId, std::int64_t> truth;
  for (const auto& p : s) {
    cms.add(p);
    cs.add(p);
    ++truth[p.id];
  }
  double e_cms = 0, e_cs = 0;
  for (auto [id, v] : truth) {
    e_cms += std::pow(double(cms.query(id) - v), 2);
    e_cs += std::pow(double(cs.query(id) - v), 2);
  }
  EXPECT_LT(e_cs, e_cms);
}

TEST(Sketches, NoTopKCapability) {
  fv::CountMinSketch cms(4, 8, 1);
  EXPECT_THROW(cms.top_candidates(1), fv::CapabilityError);
  fv::AnyEstimator e(fv::CountSketch(4, 8, 1));
  EXPECT_FALSE(e.supports_top_k());
  EXPECT_TRUE(e.supports_query());
  EXPECT_THROW(e.top_candidates(3), fv::CapabilityError);
  static_assert(!fv::TopKEstimator<fv::CountMinSketch>);
  static_assert(fv::FrequencyEstimator<fv::CountMinSketch>);
}
