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
#include <set>
#include <vector>

#include "flowvol/stream.hpp"

namespace fv = flowvol;

namespace {

// Exact Zipf pmf by direct summation, independent of the generator's table.
std::vector<double> zipf_pmf(double skew, std::uint64_t n) {
  std::vector<double> p(n);
  double total = 0;
  for (std::uint64_t r = 1; r <= n; ++r) total += std::pow(double(r), -skew);
  for (std::uint64_t r = 1; r <= n; ++r) p[r - 1] = std::pow(double(r), -skew) / total;
  return p;
}

std::vector<double> empirical(const std::vector<fv::Packet>& s, std::uint64_t n) {
  std::vector<double> f(n, 0.0);
  for (const auto& p : s) f[p.id - 1] += 1.0;
  for (auto& x : f) x /= double(s.size());
  return f;
}

}  // namespace

TEST(Zipf, UniformWhenSkewIsZero) {
  auto s = fv::zipf_generate({0.0, 4, 400000, 3});
  ASSERT_EQ(s.size(), 400000u);
  for (double f : empirical(s, 4)) EXPECT_NEAR(f, 0.25, 0.005);
}

TEST(Zipf, RankRatioAtSkewOne) {
  auto s = fv::zipf_generate({1.0, 1000, 1000000, 11});
  const auto p = zipf_pmf(1.0, 1000);
  const auto f = empirical(s, 1000);
  const double expected = p[0] / p[1];
  EXPECT_NEAR(expected, 2.0, 1e-12);
  EXPECT_NEAR(f[0] / f[1], expected, 0.05 * expected);
}

TEST(Zipf, TotalVariationAgainstExactPmf) {
  for (double skew : {0.0, 0.6, 0.8, 1.0, 1.2, 1.5}) {
    const std::uint64_t n = 100;
    auto s = fv::zipf_generate({skew, n, 1000000, 5});
    const auto p = zipf_pmf(skew, n);
    const auto f = empirical(s, n);
    double tv = 0;
    for (std::uint64_t i = 0; i < n; ++i) tv += std::abs(p[i] - f[i]);
    EXPECT_LT(tv / 2, 0.01) << "skew " << skew;
  }
}

TEST(Zipf, WorkloadSkewsGiveDistinctTraces) {
  std::set<std::vector<fv::FlowId>> traces;
  for (double skew : {0.6, 0.8, 1.0, 1.2, 1.5}) {
    auto s = fv::zipf_generate({skew, 1u << 20, 2000, 9});
    ASSERT_EQ(s.size(), 2000u);
    std::vector<fv::FlowId> ids;
    for (const auto& p : s) {
      EXPECT_EQ(p.weight, 1u);
      EXPECT_GE(p.id, 1u);
      EXPECT_LE(p.id, 1u << 20);
      ids.push_back(p.id);
    }
    traces.insert(ids);
  }
  EXPECT_EQ(traces.size(), 5u);
}

TEST(Zipf, DeterministicForFixedSeed) {
  const fv::ZipfSpec spec{1.2, 5000, 20000, 42};
  EXPECT_EQ(fv::zipf_generate(spec), fv::zipf_generate(spec));
  auto other = spec;
  other.seed = 43;
  EXPECT_NE(fv::zipf_generate(spec), fv::zipf_generate(other));
}

TEST(Zipf, RejectsInvalidSpecs) {
  EXPECT_THROW(fv::ZipfGenerator({1.0, 0, 10, 1}), fv::InvalidArgument);
  EXPECT_THROW(fv::ZipfGenerator({-1.0, 10, 10, 1}), fv::InvalidArgument);
  EXPECT_THROW(fv::ZipfGenerator({NAN, 10, 10, 1}), fv::InvalidArgument);
  EXPECT_THROW(fv::ZipfGenerator({1.0, fv::kMaxZipfUniverse + 1, 10, 1}), fv::InvalidArgument);
}

TEST(Zipf, SingleIdUniverse) {
  auto s = fv::zipf_generate({1.0, 1, 100, 1});
  for (const auto& p : s) EXPECT_EQ(p.id, 1u);
}

TEST(Zipf, WeightHook) {
  auto s = fv::zipf_generate({1.0, 100, 10000, 2}, fv::uniform_weights(10));
  std::set<std::uint32_t> seen;
  for (const auto& p : s) {
    EXPECT_GE(p.weight, 1u);
    EXPECT_LE(p.weight, 10u);
    seen.insert(p.weight);
  }
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(fv::describe(s).max_weight, 10u);
  EXPECT_THROW(fv::uniform_weights(0), fv::InvalidArgument);
}

TEST(Describe, EmptyStream) {
  auto d = fv::describe({});
  EXPECT_EQ(d.length, 0u);
  EXPECT_EQ(d.max_weight, 1u);
}

TEST(Random, UniformIntStaysInRange) {
  fv::Rng rng(1);
  std::map<std::uint64_t, int> hist;
  for (int i = 0; i < 60000; ++i) ++hist[fv::uniform_int(rng, 3, 8)];
  ASSERT_EQ(hist.size(), 6u);
  for (auto [v, c] : hist) EXPECT_NEAR(c, 10000, 500) << v;
}
