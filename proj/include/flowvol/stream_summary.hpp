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

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "flowvol/common.hpp"
#include "flowvol/estimator.hpp"

namespace flowvol {

/// Stream-Summary: entries bucketed by exact counter value, buckets kept in
/// ascending order. Unit increments, min lookup and replacement are O(1).
///
/// Within a bucket members are kept in arrival order; the eviction victim is
/// the member that entered the minimal bucket first.
class StreamSummary {
 public:
  using Index = std::uint32_t;
  static constexpr Index npos = ~Index{0};

  struct Entry {
    FlowId id;
    std::uint64_t count;
    std::uint64_t last_update;
  };

  explicit StreamSummary(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidArgument("counter capacity must be >= 1");
    if (capacity >= npos) throw InvalidArgument("counter capacity too large");
    nodes_.reserve(capacity);
    buckets_.reserve(capacity + 1);
    index_.reserve(capacity * 2);
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return size_; }
  bool full() const noexcept { return size_ >= capacity_; }
  bool empty() const noexcept { return size_ == 0; }

  Index find(FlowId id) const {
    auto it = index_.find(id);
    return it == index_.end() ? npos : it->second;
  }

  const Entry& entry(Index n) const { return nodes_[n].e; }

  std::uint64_t min_count() const { return min_bucket_ == npos ? 0 : buckets_[min_bucket_].count; }

  /// Node that would be evicted next.
  Index victim() const {
    assert(min_bucket_ != npos);
    return buckets_[min_bucket_].head;
  }

  /// Inserts a new id. `count` must not exceed the current minimum.
  Index insert(FlowId id, std::uint64_t count, std::uint64_t stamp) {
    assert(!full());
    assert(find(id) == npos);
    assert(empty() || count <= min_count());
    Index n = alloc_node();
    nodes_[n].e = Entry{id, count, stamp};
    index_.emplace(id, n);
    ++size_;
    if (min_bucket_ != npos && buckets_[min_bucket_].count == count) {
      link_member(min_bucket_, n);
    } else {
      Index b = alloc_bucket(count);
      buckets_[b].next = min_bucket_;
      if (min_bucket_ != npos) buckets_[min_bucket_].prev = b;
      min_bucket_ = b;
      link_member(b, n);
    }
    return n;
  }

  void increment(Index n, std::uint64_t stamp) {
    Node& node = nodes_[n];
    const Index from = node.bucket;
    const std::uint64_t target = node.e.count + 1;
    const Index next = buckets_[from].next;
    Index to;
    if (next != npos && buckets_[next].count == target) {
      to = next;
    } else {
      to = alloc_bucket(target);
      buckets_[to].prev = from;
      buckets_[to].next = next;
      buckets_[from].next = to;
      if (next != npos) buckets_[next].prev = to;
    }
    unlink_member(n);
    node.e.count = target;
    node.e.last_update = stamp;
    link_member(to, n);
    if (buckets_[from].size == 0) free_bucket(from);
  }

  /// Hands node n over to a new id, keeping its count.
  void relabel(Index n, FlowId id) {
    index_.erase(nodes_[n].e.id);
    nodes_[n].e.id = id;
    index_.emplace(id, n);
  }

  void erase(Index n) {
    const Index b = nodes_[n].bucket;
    unlink_member(n);
    if (buckets_[b].size == 0) free_bucket(b);
    index_.erase(nodes_[n].e.id);
    free_nodes_.push_back(n);
    nodes_[n].bucket = npos;
    --size_;
  }

  /// Removes every entry of the minimal bucket.
  void erase_min_bucket() {
    if (min_bucket_ == npos) return;
    const Index b = min_bucket_;
    while (buckets_[b].size > 1) erase(buckets_[b].head);
    erase(buckets_[b].head);
  }

  template <class F>
  void for_each(F&& f) const {
    for (Index b = min_bucket_; b != npos; b = buckets_[b].next)
      for (Index n = buckets_[b].head; n != npos; n = nodes_[n].next) f(nodes_[n].e);
  }

  /// Structural self-check used by tests.
  bool audit() const {
    std::size_t seen = 0;
    Index prev = npos;
    for (Index b = min_bucket_; b != npos; b = buckets_[b].next) {
      const Bucket& bk = buckets_[b];
      if (bk.prev != prev || bk.size == 0) return false;
      if (prev != npos && buckets_[prev].count >= bk.count) return false;
      std::size_t members = 0;
      for (Index n = bk.head; n != npos; n = nodes_[n].next) {
        if (nodes_[n].bucket != b || nodes_[n].e.count != bk.count) return false;
        if (find(nodes_[n].e.id) != n) return false;
        ++members;
      }
      if (members != bk.size) return false;
      seen += members;
      prev = b;
    }
    return seen == size_ && index_.size() == size_;
  }

 private:
  struct Node {
    Entry e{};
    Index bucket = npos;
    Index prev = npos;
    Index next = npos;
  };
  struct Bucket {
    std::uint64_t count = 0;
    Index head = npos;
    Index tail = npos;
    Index prev = npos;
    Index next = npos;
    std::size_t size = 0;
  };

  Index alloc_node() {
    if (!free_nodes_.empty()) {
      Index n = free_nodes_.back();
      free_nodes_.pop_back();
      nodes_[n] = Node{};
      return n;
    }
    nodes_.emplace_back();
    return static_cast<Index>(nodes_.size() - 1);
  }

  Index alloc_bucket(std::uint64_t count) {
    Index b;
    if (!free_buckets_.empty()) {
      b = free_buckets_.back();
      free_buckets_.pop_back();
      buckets_[b] = Bucket{};
    } else {
      buckets_.emplace_back();
      b = static_cast<Index>(buckets_.size() - 1);
    }
    buckets_[b].count = count;
    return b;
  }

  void free_bucket(Index b) {
    Bucket& bk = buckets_[b];
    if (bk.prev != npos) buckets_[bk.prev].next = bk.next;
    else min_bucket_ = bk.next;
    if (bk.next != npos) buckets_[bk.next].prev = bk.prev;
    free_buckets_.push_back(b);
  }

  void link_member(Index b, Index n) {
    Bucket& bk = buckets_[b];
    Node& node = nodes_[n];
    node.bucket = b;
    node.next = npos;
    node.prev = bk.tail;
    if (bk.tail != npos) nodes_[bk.tail].next = n;
    else bk.head = n;
    bk.tail = n;
    ++bk.size;
  }

  void unlink_member(Index n) {
    Node& node = nodes_[n];
    Bucket& bk = buckets_[node.bucket];
    if (node.prev != npos) nodes_[node.prev].next = node.next;
    else bk.head = node.next;
    if (node.next != npos) nodes_[node.next].prev = node.prev;
    else bk.tail = node.prev;
    --bk.size;
    node.prev = node.next = npos;
  }

  std::size_t capacity_;
  std::size_t size_ = 0;
  std::vector<Node> nodes_;
  std::vector<Bucket> buckets_;
  std::vector<Index> free_nodes_;
  std::vector<Index> free_buckets_;
  Index min_bucket_ = npos;
  std::unordered_map<FlowId, Index> index_;
};

}  // namespace flowvol
