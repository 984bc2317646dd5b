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
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flowvol/common.hpp"

namespace flowvol {

/// Length and maximal weight of a stream.
struct StreamDescriptor {
  std::uint64_t length = 0;
  std::uint32_t max_weight = 1;
};

inline StreamDescriptor describe(std::span<const Packet> packets) {
  StreamDescriptor d;
  d.length = packets.size();
  std::uint32_t m = 0;
  for (const auto& p : packets) m = std::max(m, p.weight);
  d.max_weight = std::max<std::uint32_t>(m, 1);
  return d;
}

inline constexpr std::uint64_t kDefaultUniverse = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxZipfUniverse = std::uint64_t{1} << 28;

struct ZipfSpec {
  double skew = 1.0;
  std::uint64_t universe_size = kDefaultUniverse;
  std::uint64_t length = 0;
  std::uint64_t seed = 1;
};

/// Draws weights for synthetic packets. The default produces weight 1.
using WeightSampler = std::function<std::uint32_t(Rng&)>;

/// Weights uniform on [1, max_weight].
inline WeightSampler uniform_weights(std::uint32_t max_weight) {
  if (max_weight == 0) throw InvalidArgument("max_weight must be >= 1");
  return [max_weight](Rng& rng) {
    return static_cast<std::uint32_t>(uniform_int(rng, 1, max_weight));
  };
}

/// Inverse-CDF Zipf sampler over ranks 1..n with P(r) proportional to
/// r^-skew. Rank r is emitted as flow id r.
class ZipfGenerator {
 public:
  explicit ZipfGenerator(const ZipfSpec& spec, WeightSampler weights = {})
      : spec_(spec), rng_(spec.seed), weights_(std::move(weights)) {
    if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew))
      throw InvalidArgument("zipf skew must be a finite value >= 0");
    if (spec.universe_size == 0) throw InvalidArgument("zipf universe_size must be >= 1");
    if (spec.universe_size > kMaxZipfUniverse)
      throw InvalidArgument("zipf universe_size exceeds 2^28");
    cdf_ = exact_cdf(spec.skew, spec.universe_size);
  }

  /// Normalized cumulative distribution, cdf[r-1] = P(rank <= r).
  static std::vector<double> exact_cdf(double skew, std::uint64_t n) {
    std::vector<double> cdf(n);
    long double acc = 0;
    for (std::uint64_t r = 1; r <= n; ++r) {
      acc += std::pow(static_cast<long double>(r), -static_cast<long double>(skew));
      cdf[r - 1] = static_cast<double>(acc);
    }
    const double total = cdf.back();
    for (auto& c : cdf) c /= total;
    cdf.back() = 1.0;
    return cdf;
  }

  const ZipfSpec& spec() const noexcept { return spec_; }
  std::uint64_t emitted() const noexcept { return emitted_; }
  bool done() const noexcept { return emitted_ >= spec_.length; }

  /// Next rank in [1, n], ignoring the length budget.
  FlowId next_rank() {
    const double u = uniform01(rng_);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<FlowId>(it - cdf_.begin()) + 1;
  }

  Packet next() {
    Packet p;
    p.id = next_rank();
    p.weight = weights_ ? weights_(rng_) : 1;
    ++emitted_;
    return p;
  }

 private:
  ZipfSpec spec_;
  Rng rng_;
  WeightSampler weights_;
  std::vector<double> cdf_;
  std::uint64_t emitted_ = 0;
};

/// Materializes exactly spec.length packets.
inline std::vector<Packet> zipf_generate(const ZipfSpec& spec, WeightSampler weights = {}) {
  ZipfGenerator gen(spec, std::move(weights));
  std::vector<Packet> out;
  out.reserve(spec.length);
  while (!gen.done()) out.push_back(gen.next());
  return out;
}

}  // namespace flowvol
