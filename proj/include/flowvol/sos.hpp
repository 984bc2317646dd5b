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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "flowvol/common.hpp"

namespace flowvol {

/// Thrown when a structural audit or an internal precondition fails.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Semi-ordered summary: an ascending list of groups keyed by a coarse
/// counter value, each holding an unordered set of flow nodes. A node also
/// carries a fine-grained remainder that the owner interprets.
///
/// Group members are kept newest-first; victim() is the newest member of
/// the minimal group.
class SemiOrderedSummary {
 public:
  using Index = std::uint32_t;
  static constexpr Index npos = ~Index{0};

  struct Node {
    FlowId id = 0;
    std::uint64_t remainder = 0;
    std::uint64_t last_update = 0;
    Index group = npos;
    Index prev = npos;
    Index next = npos;
  };

  struct Group {
    std::uint64_t value = 0;
    Index head = npos;
    Index prev = npos;
    Index next = npos;
    std::size_t size = 0;
  };

  explicit SemiOrderedSummary(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidArgument("counter capacity must be >= 1");
    if (capacity >= npos) throw InvalidArgument("counter capacity too large");
    nodes_.reserve(capacity);
    groups_.reserve(capacity);
    index_.reserve(capacity * 2);
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return size_; }
  bool full() const noexcept { return size_ >= capacity_; }
  std::size_t group_count() const noexcept { return group_count_; }

  Index find(FlowId id) const {
    auto it = index_.find(id);
    return it == index_.end() ? npos : it->second;
  }

  const Node& node(Index n) const { return nodes_[n]; }
  std::uint64_t value_of(Index n) const { return groups_[nodes_[n].group].value; }
  void set_remainder(Index n, std::uint64_t r, std::uint64_t stamp) {
    nodes_[n].remainder = r;
    nodes_[n].last_update = stamp;
  }

  /// Counter value of the minimal group (0 when empty).
  std::uint64_t min_value() const { return min_group_ == npos ? 0 : groups_[min_group_].value; }

  Index victim() const {
    if (min_group_ == npos) throw StructuralError("victim() on an empty summary");
    return groups_[min_group_].head;
  }

  /// Inserts a new id with counter value `value`, walking up from the
  /// minimal group. Returns the node; `hops` receives the groups passed.
  Index insert(FlowId id, std::uint64_t value, std::uint64_t remainder, std::uint64_t stamp,
               std::size_t& hops) {
    if (full()) throw StructuralError("insert() on a full summary");
    Index n = alloc_node();
    nodes_[n].id = id;
    nodes_[n].remainder = remainder;
    nodes_[n].last_update = stamp;
    index_.emplace(id, n);
    ++size_;
    hops = 0;
    Index before = npos;  // last group with value < target
    Index g = min_group_;
    while (g != npos && groups_[g].value < value) {
      before = g;
      g = groups_[g].next;
      if (g != npos && groups_[g].value <= value) ++hops;
    }
    Index target = (g != npos && groups_[g].value == value) ? g : new_group_after(before, value);
    link(target, n);
    return n;
  }

  /// Moves node n forward so its counter value grows by `delta` (>= 1).
  /// Returns the number of groups stepped over.
  std::size_t advance(Index n, std::uint64_t delta) {
    if (delta == 0) return 0;
    const Index from = nodes_[n].group;
    const std::uint64_t target = groups_[from].value + delta;
    std::size_t hops = 0;
    Index last = from;  // last group with value < target
    Index g = groups_[from].next;
    while (g != npos && groups_[g].value < target) {
      last = g;
      g = groups_[g].next;
      ++hops;
    }
    Index to;
    if (g != npos && groups_[g].value == target) {
      to = g;
      ++hops;
    } else {
      to = new_group_after(last, target);
    }
    unlink(n);
    link(to, n);
    if (groups_[from].size == 0) free_group(from);
    return hops;
  }

  /// Hands node n to a new id, keeping its group.
  void relabel(Index n, FlowId id) {
    index_.erase(nodes_[n].id);
    nodes_[n].id = id;
    index_.emplace(id, n);
  }

  /// Re-links n as the newest member of its group.
  void touch_front(Index n) {
    const Index g = nodes_[n].group;
    if (groups_[g].head == n) return;
    unlink(n);
    link(g, n);
  }

  void clear() {
    nodes_.clear();
    groups_.clear();
    free_nodes_.clear();
    free_groups_.clear();
    index_.clear();
    size_ = 0;
    group_count_ = 0;
    min_group_ = npos;
  }

  /// Visits (node, group value) in ascending group order.
  template <class F>
  void for_each(F&& f) const {
    for (Index g = min_group_; g != npos; g = groups_[g].next)
      for (Index n = groups_[g].head; n != npos; n = nodes_[n].next) f(nodes_[n], groups_[g].value);
  }

  /// Groups strictly ascending, none empty, index consistent.
  bool audit() const {
    std::size_t seen = 0, ngroups = 0;
    Index prev = npos;
    for (Index g = min_group_; g != npos; g = groups_[g].next) {
      const Group& gr = groups_[g];
      if (gr.prev != prev || gr.size == 0 || gr.head == npos) return false;
      if (prev != npos && groups_[prev].value >= gr.value) return false;
      std::size_t members = 0;
      Index back = npos;
      for (Index n = gr.head; n != npos; n = nodes_[n].next) {
        if (nodes_[n].group != g || nodes_[n].prev != back) return false;
        if (find(nodes_[n].id) != n) return false;
        back = n;
        ++members;
      }
      if (members != gr.size) return false;
      seen += members;
      ++ngroups;
      prev = g;
    }
    return seen == size_ && index_.size() == size_ && ngroups == group_count_;
  }

 private:
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

  /// New group placed right after `after` (npos: at the front).
  Index new_group_after(Index after, std::uint64_t value) {
    Index g;
    if (!free_groups_.empty()) {
      g = free_groups_.back();
      free_groups_.pop_back();
      groups_[g] = Group{};
    } else {
      groups_.emplace_back();
      g = static_cast<Index>(groups_.size() - 1);
    }
    groups_[g].value = value;
    const Index next = after == npos ? min_group_ : groups_[after].next;
    groups_[g].prev = after;
    groups_[g].next = next;
    if (after == npos) min_group_ = g;
    else groups_[after].next = g;
    if (next != npos) groups_[next].prev = g;
    ++group_count_;
    return g;
  }

  void free_group(Index g) {
    Group& gr = groups_[g];
    if (gr.prev != npos) groups_[gr.prev].next = gr.next;
    else min_group_ = gr.next;
    if (gr.next != npos) groups_[gr.next].prev = gr.prev;
    free_groups_.push_back(g);
    --group_count_;
  }

  void link(Index g, Index n) {
    Group& gr = groups_[g];
    Node& nd = nodes_[n];
    nd.group = g;
    nd.prev = npos;
    nd.next = gr.head;
    if (gr.head != npos) nodes_[gr.head].prev = n;
    gr.head = n;
    ++gr.size;
  }

  void unlink(Index n) {
    Node& nd = nodes_[n];
    Group& gr = groups_[nd.group];
    if (nd.prev != npos) nodes_[nd.prev].next = nd.next;
    else gr.head = nd.next;
    if (nd.next != npos) nodes_[nd.next].prev = nd.prev;
    --gr.size;
    nd.prev = nd.next = npos;
  }

  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t group_count_ = 0;
  std::vector<Node> nodes_;
  std::vector<Group> groups_;
  std::vector<Index> free_nodes_;
  std::vector<Index> free_groups_;
  Index min_group_ = npos;
  std::unordered_map<FlowId, Index> index_;
};

}  // namespace flowvol
