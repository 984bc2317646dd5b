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
#include <map>
#include <unordered_map>
#include <vector>

#include "flowvol/counters.hpp"
#include "flowvol/dwpss.hpp"
#include "flowvol/stream.hpp"

namespace fv = flowvol;

namespace {

// Every occupied slot holds an id hashed to that bucket, with no duplicates.
bool ids_in_home_buckets(const fv::SetAssociativePss& t) {
  std::map<fv::FlowId, int> seen;
  for (std::size_t bkt = 0; bkt < t.sets(); ++bkt)
    for (const auto& s : t.bucket_slots(bkt)) {
      if (s.count == 0) continue;
      if (t.bucket_index(s.id) != bkt) return false;
      if (++seen[s.id] > 1) return false;
    }
  return true;
}

}  // namespace

TEST(SetAssociativePss, RejectsBadGeometry) {
  EXPECT_THROW(fv::SetAssociativePss(100, 16, 1), fv::InvalidArgument);
  EXPECT_THROW(fv::SetAssociativePss(0, 1, 1), fv::InvalidArgument);
  EXPECT_THROW(fv::SetAssociativePss(16, 0, 1), fv::InvalidArgument);
  fv::SetAssociativePss ok(128, 16, 1);
  EXPECT_EQ(ok.sets(), 8u);
  EXPECT_EQ(ok.name(), "16W-PSS");
}

TEST(SetAssociativePss, IdsStayInTheirBuckets) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    fv::SetAssociativePss t(64, 4, seed, seed * 7);
    auto s = fv::zipf_generate({0.9, 5000, 20000, seed});
    for (const auto& p : s) t.add(p);
    EXPECT_TRUE(ids_in_home_buckets(t)) << "seed " << seed;
    EXPECT_LE(t.stats().occupied, 64u);
  }
}

TEST(SetAssociativePss, ExactWhenEveryBucketFits) {
  fv::SetAssociativePss t(64, 4, 3);
  // Pick ids so that no bucket receives more than `ways` of them.
  std::vector<int> load(t.sets(), 0);
  std::vector<fv::FlowId> ids;
  for (fv::FlowId id = 1; ids.size() < 40; ++id) {
    auto bkt = t.bucket_index(id);
    if (load[bkt] < 4) {
      ++load[bkt];
      ids.push_back(id);
    }
  }
  fv::Rng rng(5);
  std::unordered_map<fv::FlowId, std::uint64_t> truth;
  for (int i = 0; i < 20000; ++i) {
    auto id = ids[fv::uniform_int(rng, 0, ids.size() - 1)];
    t.add({id, 1});
    ++truth[id];
  }
  for (auto [id, v] : truth) EXPECT_EQ(t.query(id), v);
  EXPECT_EQ(t.stats().replaced, 0u);
}

TEST(SetAssociativePss, SingleSetMatchesPssAdmissionLaw) {
  const int trials = 100000;
  int admitted = 0;
  for (int i = 0; i < trials; ++i) {
    fv::SetAssociativePss t(2, 2, static_cast<std::uint64_t>(i) + 1);
    for (int r = 0; r < 3; ++r) t.add({1, 1});
    for (int r = 0; r < 5; ++r) t.add({2, 1});
    t.add({3, 1});  // minimum of the single bucket is 3
    admitted += t.stats().replaced == 1;
  }
  const double p = 0.25, rate = double(admitted) / trials;
  EXPECT_NEAR(rate, p, 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(SetAssociativePss, UntrackedQueryIsBucketMinimum) {
  fv::SetAssociativePss t(1, 1, 1);
  EXPECT_EQ(t.query(5), 0u);
  t.add({5, 1});
  t.add({5, 1});
  EXPECT_EQ(t.query(5), 2u);
  EXPECT_EQ(t.query(6), 2u);
}

TEST(SetAssociativePss, RejectedMissLeavesTableUntouched) {
  fv::SetAssociativePss t(8, 8, 2);
  for (fv::FlowId id = 1; id <= 8; ++id)
    for (int r = 0; r < 6; ++r) t.add({id, 1});
  int rejected = 0;
  for (fv::FlowId id = 100; id < 160; ++id) {
    const auto before = t.entries();
    const auto replaced = t.stats().replaced;
    t.add({id, 1});
    if (t.stats().replaced == replaced) {
      ++rejected;
      ASSERT_EQ(t.entries(), before);
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(SetAssociativePss, DeterministicUnderSeed) {
  auto s = fv::zipf_generate({1.0, 10000, 50000, 9});
  fv::SetAssociativePss x(128, 16, 4), y(128, 16, 4);
  for (const auto& p : s) {
    x.add(p);
    y.add(p);
  }
  EXPECT_EQ(x.entries(), y.entries());
}

TEST(SetAssociativePss, TopCandidatesAndWeights) {
  fv::SetAssociativePss t(4, 4, 1);
  for (int r = 0; r < 5; ++r) t.add({1, 1});
  for (int r = 0; r < 3; ++r) t.add({2, 1});
  t.add({3, 1});
  auto top = t.top_candidates(2);
  ASSERT_EQ(top.items.size(), 2u);
  EXPECT_EQ(top.items[0].id, 1u);
  EXPECT_EQ(top.items[1].id, 2u);
  EXPECT_TRUE(t.top_candidates(10).short_list);
  EXPECT_THROW(t.add({1, 3}), fv::InvalidArgument);
}
