#pragma once

#include <map>
#include <vector>

#include "ppc/sleptsov/net.hpp"

namespace ppc::sleptsov {

struct ExploreLimits {
  std::size_t depth = 1000;
  std::size_t state_cap = 1000000;
  std::size_t sequence_cap = 10000;  // maximal sequences kept verbatim
};

struct Edge {
  std::size_t from;
  std::size_t to;
  std::size_t transition;
  Tokens k;
};

struct ReachabilityGraph {
  std::vector<Marking> markings;  // index 0 is the initial marking
  std::vector<Edge> edges;
  std::vector<std::size_t> deadlocks;
  // Firing sequences from the initial marking into a deadlock.
  std::vector<std::vector<std::size_t>> maximal_sequences;
  std::size_t maximal_count = 0;
  bool partial = false;               // state cap hit
  bool depth_limited = false;         // some path was cut at the depth bound
  bool sequences_truncated = false;   // more maximal sequences than kept

  bool unique_maximal_sequence() const {
    return maximal_count == 1 && !partial && !depth_limited && !sequences_truncated;
  }
};

// Breadth-first reachability under every enabled choice (single transition
// per step, maximal multiplicity), then enumeration of maximal sequences.
inline ReachabilityGraph explore(const SleptsovNet& net, const Marking& m0,
                                 const ExploreLimits& lim = {}) {
  ReachabilityGraph g;
  std::map<Marking, std::size_t> index;
  std::vector<std::size_t> level;
  std::vector<std::vector<std::size_t>> out_edges;
  g.markings.push_back(m0);
  index[m0] = 0;
  level.push_back(0);
  out_edges.emplace_back();
  std::vector<bool> expanded(1, false);

  for (std::size_t head = 0; head < g.markings.size(); ++head) {
    auto en = enabled(net, g.markings[head]);
    if (en.empty()) {
      g.deadlocks.push_back(head);
      expanded[head] = true;
      continue;
    }
    if (level[head] >= lim.depth) continue;
    if (g.partial) continue;
    expanded[head] = true;
    for (const auto& e : en) {
      Marking next = fire(net, g.markings[head], e.transition, e.k);
      auto it = index.find(next);
      std::size_t to;
      if (it == index.end()) {
        if (g.markings.size() >= lim.state_cap) {
          g.partial = true;
          expanded[head] = false;
          break;
        }
        to = g.markings.size();
        index.emplace(next, to);
        g.markings.push_back(std::move(next));
        level.push_back(level[head] + 1);
        out_edges.emplace_back();
        expanded.push_back(false);
      } else {
        to = it->second;
      }
      out_edges[head].push_back(g.edges.size());
      g.edges.push_back({head, to, e.transition, e.k});
    }
  }

  // Depth-first path enumeration bounded by the depth limit.
  std::vector<std::size_t> path;
  auto dfs = [&](auto&& self, std::size_t node) -> void {
    if (out_edges[node].empty()) {
      if (expanded[node]) {
        ++g.maximal_count;
        if (g.maximal_sequences.size() < lim.sequence_cap) {
          g.maximal_sequences.push_back(path);
        } else {
          g.sequences_truncated = true;
        }
      } else {
        g.depth_limited = g.depth_limited || !g.partial;
      }
      return;
    }
    if (path.size() >= lim.depth) {
      g.depth_limited = true;
      return;
    }
    if (g.maximal_count > 100 * lim.sequence_cap) {
      g.sequences_truncated = true;
      return;
    }
    for (std::size_t ei : out_edges[node]) {
      path.push_back(g.edges[ei].transition);
      self(self, g.edges[ei].to);
      path.pop_back();
    }
  };
  dfs(dfs, 0);
  return g;
}

}  // namespace ppc::sleptsov
