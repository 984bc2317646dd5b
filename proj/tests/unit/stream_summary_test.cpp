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

#include <map>

#include "flowvol/common.hpp"
#include "flowvol/stream_summary.hpp"

namespace fv = flowvol;

TEST(StreamSummary, InsertIncrementAndVictim) {
  fv::StreamSummary s(3);
  s.insert(1, 1, 1);
  s.insert(2, 1, 2);
  EXPECT_EQ(s.min_count(), 1u);
  EXPECT_EQ(s.entry(s.victim()).id, 1u);  // first to enter the minimal bucket
  s.increment(s.find(1), 3);
  EXPECT_EQ(s.entry(s.victim()).id, 2u);
  EXPECT_EQ(s.entry(s.find(1)).count, 2u);
  EXPECT_EQ(s.entry(s.find(1)).last_update, 3u);
  EXPECT_TRUE(s.audit());
}

TEST(StreamSummary, RelabelKeepsCount) {
  fv::StreamSummary s(1);
  auto n = s.insert(7, 1, 1);
  s.increment(n, 2);
  s.relabel(n, 9);
  EXPECT_EQ(s.find(7), fv::StreamSummary::npos);
  EXPECT_EQ(s.entry(s.find(9)).count, 2u);
  EXPECT_TRUE(s.audit());
}

TEST(StreamSummary, EraseMinBucket) {
  fv::StreamSummary s(4);
  for (fv::FlowId id = 1; id <= 4; ++id) s.insert(id, 1, id);
  s.increment(s.find(4), 5);
  s.erase_min_bucket();
  EXPECT_EQ(s.size(), 1u);
  EXPECT_NE(s.find(4), fv::StreamSummary::npos);
  EXPECT_TRUE(s.audit());
  s.erase_min_bucket();
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.min_count(), 0u);
  EXPECT_TRUE(s.audit());
}

TEST(StreamSummary, RandomOperationsStayConsistent) {
  fv::Rng rng(17);
  fv::StreamSummary s(50);
  std::map<fv::FlowId, std::uint64_t> model;
  for (std::uint64_t step = 1; step <= 20000; ++step) {
    const fv::FlowId id = fv::uniform_int(rng, 1, 120);
    auto n = s.find(id);
    if (n != fv::StreamSummary::npos) {
      s.increment(n, step);
      ++model[id];
    } else if (!s.full()) {
      const auto c = s.empty() ? 1 : std::min<std::uint64_t>(1, s.min_count());
      s.insert(id, c, step);
      model[id] = c;
    } else if (step % 3 == 0) {
      model.erase(s.entry(s.victim()).id);
      s.erase(s.victim());
    } else {
      n = s.victim();
      const auto c = s.entry(n).count;
      model.erase(s.entry(n).id);
      s.relabel(n, id);
      model[id] = c;
    }
    if (step % 500 == 0) {
      ASSERT_TRUE(s.audit());
      ASSERT_EQ(s.size(), model.size());
      for (auto [k, c] : model) ASSERT_EQ(s.entry(s.find(k)).count, c);
    }
  }
}

TEST(StreamSummary, RejectsZeroCapacity) { EXPECT_THROW(fv::StreamSummary(0), fv::InvalidArgument); }
