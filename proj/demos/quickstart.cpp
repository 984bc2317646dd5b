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


// Feeds one Zipf stream to a few estimators and prints their top flows,
// then runs a small hierarchical scan on synthetic address pairs.

#include <cstdio>
#include <vector>

#include "flowvol/flowvol.hpp"

namespace fv = flowvol;

template <class E>
void show_top(E& est, const std::vector<fv::Packet>& stream, std::size_t k) {
  for (const auto& p : stream) est.add(p);
  const auto top = est.top_candidates(k);
  std::printf("%-8s", est.name().c_str());
  for (const auto& c : top.items)
    std::printf(" %llu:%llu", static_cast<unsigned long long>(c.id),
                static_cast<unsigned long long>(c.estimate));
  std::printf("   (replaced %llu)\n", static_cast<unsigned long long>(est.stats().replaced));
}

int main() {
  const auto stream = fv::zipf_generate({1.0, 1u << 16, 200000, 7});
  std::printf("top-5 flows of a Zipf 1.0 stream, 64 counters each\n");
  fv::SpaceSaving ss(64);
  fv::Frequent fr(64);
  fv::ProbabilisticSpaceSaving pss(64, 7);
  fv::SetAssociativePss dw(64, 16, 7);
  fv::Fast fast({1, 0.01, 1.0, 64});
  show_top(ss, stream, 5);
  show_top(fr, stream, 5);
  show_top(pss, stream, 5);
  show_top(dw, stream, 5);
  show_top(fast, stream, 5);

  const auto weighted = fv::zipf_generate({1.2, 1u << 16, 200000, 8}, fv::uniform_weights(1500));
  fv::WindowedFast win({65536, 1500, 1.0 / 16, 1.0});
  for (const auto& p : weighted) win.add(p);
  std::printf("\nbytes of flow 1 in the last %llu packets: about %llu\n",
              static_cast<unsigned long long>(win.effective_window()),
              static_cast<unsigned long long>(win.winquery(1)));

  const auto addrs = fv::generate_address_trace({1.5, 100000, 64, 9});
  fv::HierarchicalFast h(fv::Hierarchy::ipv4_bytes(1), {64, 0.01, 1.0, 0});
  for (const auto& p : addrs) h.add(p);
  std::printf("\nsource prefixes above 10%% of the traffic:\n");
  for (const auto& item : h.query_hhh(0.1))
    std::printf("  %-18s %llu\n", item.label.c_str(), static_cast<unsigned long long>(item.estimate));
  return 0;
}
