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

// Count-Min and Count sketches. Point queries only; neither tracks ids.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol {

namespace detail {

inline std::vector<std::uint64_t> row_seeds(std::size_t rows, std::uint64_t seed) {
  std::vector<std::uint64_t> s(rows);
  Rng rng(seed);
  for (auto& v : s) v = rng();
  return s;
}

/// L x w grid of signed accumulators with one hash seed per row.
class SketchMatrix {
 public:
  SketchMatrix(std::size_t width, std::vector<std::uint64_t> seeds)
      : width_(width), seeds_(std::move(seeds)) {
    if (seeds_.empty()) throw InvalidArgument("sketch needs at least one row");
    if (width_ == 0) throw InvalidArgument("sketch width must be >= 1");
    auto sorted = seeds_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("sketch row seeds must be distinct");
    cells_.assign(seeds_.size() * width_, 0);
  }

  std::size_t rows() const noexcept { return seeds_.size(); }
  std::size_t width() const noexcept { return width_; }
  const std::vector<std::uint64_t>& seeds() const noexcept { return seeds_; }

  std::uint64_t hash(std::size_t row, FlowId id) const { return seeded_hash(id, seeds_[row]); }
  std::int64_t& cell(std::size_t row, std::uint64_t h) { return cells_[row * width_ + h % width_]; }
  std::int64_t cell(std::size_t row, std::uint64_t h) const {
    return cells_[row * width_ + h % width_];
  }

 private:
  std::size_t width_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::int64_t> cells_;
};

}  // namespace detail

/// ceil(e / epsilon), the usual Count-Min width.
inline std::size_t width_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidArgument("epsilon must be in (0, 1]");
  return static_cast<std::size_t>(tolerant_ceil(std::numbers::e / epsilon));
}

class CountMinSketch {
 public:
  static constexpr bool kSupportsTopK = false;

  CountMinSketch(std::size_t rows, std::size_t width, std::uint64_t seed)
      : m_(width, detail::row_seeds(rows, seed)) {}
  CountMinSketch(std::size_t width, std::vector<std::uint64_t> seeds)
      : m_(width, std::move(seeds)) {}

  void add(const Packet& p) {
    ++processed_;
    for (std::size_t r = 0; r < m_.rows(); ++r) m_.cell(r, m_.hash(r, p.id)) += p.weight;
  }

  std::int64_t query(FlowId id) const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t r = 0; r < m_.rows(); ++r) best = std::min(best, m_.cell(r, m_.hash(r, id)));
    return best;
  }

  TopCandidates top_candidates(std::size_t) const {
    throw CapabilityError("CMS does not support top-k queries");
  }

  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t width() const noexcept { return m_.width(); }
  EstimatorStats stats() const { return {processed_, 0, 0, m_.rows() * m_.width()}; }
  std::string name() const { return "CMS"; }

 private:
  detail::SketchMatrix m_;
  std::uint64_t processed_ = 0;
};

/// Count Sketch. Each row adds sign(id) * weight; the estimate is the
/// median of the signed row readings (lower median for even row counts).
class CountSketch {
 public:
  static constexpr bool kSupportsTopK = false;

  CountSketch(std::size_t rows, std::size_t width, std::uint64_t seed)
      : m_(width, detail::row_seeds(rows, seed)) {}
  CountSketch(std::size_t width, std::vector<std::uint64_t> seeds) : m_(width, std::move(seeds)) {}

  void add(const Packet& p) {
    ++processed_;
    for (std::size_t r = 0; r < m_.rows(); ++r) {
      const std::uint64_t h = m_.hash(r, p.id);
      m_.cell(r, h) += sign(h) * static_cast<std::int64_t>(p.weight);
    }
  }

  std::int64_t query(FlowId id) const {
    std::vector<std::int64_t> v(m_.rows());
    for (std::size_t r = 0; r < m_.rows(); ++r) {
      const std::uint64_t h = m_.hash(r, id);
      v[r] = sign(h) * m_.cell(r, h);
    }
    const std::size_t mid = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
  }

  TopCandidates top_candidates(std::size_t) const {
    throw CapabilityError("CS does not support top-k queries");
  }

  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t width() const noexcept { return m_.width(); }
  EstimatorStats stats() const { return {processed_, 0, 0, m_.rows() * m_.width()}; }
  std::string name() const { return "CS"; }

 private:
  // The top bit is independent of the low bits that pick the column.
  static std::int64_t sign(std::uint64_t h) { return (h >> 63) ? 1 : -1; }

  detail::SketchMatrix m_;
  std::uint64_t processed_ = 0;
};

}  // namespace flowvol
