#include "functional_graph.hpp"

#include <algorithm>

#include "halftree/check.hpp"

namespace halftree::detail {

std::vector<std::vector<Vertex>> functional_cycles(const std::vector<Vertex>& out, int n) {
  std::vector<int> state(n + 1, 0);  // 0 fresh, 1 on current walk, 2 settled
  std::vector<std::vector<Vertex>> cycles;
  for (Vertex start = 1; start <= n; ++start) {
    if (state[start] != 0) continue;
    std::vector<Vertex> walk;
    Vertex cur = start;
    while (cur >= 1 && cur <= n && state[cur] == 0) {
      state[cur] = 1;
      walk.push_back(cur);
      cur = out[cur];
    }
    if (cur >= 1 && cur <= n && state[cur] == 1) {
      auto it = std::find(walk.begin(), walk.end(), cur);
      std::vector<Vertex> cycle(it, walk.end());
      auto min_it = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), min_it, cycle.end());
      cycles.push_back(std::move(cycle));
    }
    for (Vertex v : walk) state[v] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cycles;
}

DecomposeResult strip_paths(const DecomposeInput& in) {
  const std::vector<Vertex>& out = *in.out;
  const int n = in.n;
  auto on_cycle = [&](Vertex v) {
    return !in.on_cycle.empty() && v <= n && in.on_cycle[v];
  };
  std::vector<char> alive(n + 1, 0);
  int alive_count = 0;
  for (Vertex v = 1; v <= n; ++v) {
    if (out[v] != 0 && !on_cycle(v)) {
      alive[v] = 1;
      ++alive_count;
    }
  }

  auto edge_in_m0 = [&](Vertex x, Vertex y) {
    return x <= n && y <= n && in.m0->contains(x, y);
  };

  DecomposeResult result;
  int removed = 0;
  // Paths are provably alternating as long as every earlier path followed the
  // even-length start-with-reference pattern (such paths end with
  // non-reference edges, so they never delete the reference edge a later walk
  // would need to stop at). Once the pattern breaks the guarantee is gone.
  bool pattern_ok = true;
  while (true) {
    std::vector<int> indeg(n + 1, 0);
    for (Vertex v = 1; v <= n; ++v)
      if (alive[v] && out[v] <= n) ++indeg[out[v]];
    Vertex leaf = 0;
    for (Vertex v = 1; v <= n; ++v)
      if (alive[v] && indeg[v] == 0) leaf = v;
    if (leaf == 0) break;

    std::vector<Vertex> path{leaf};
    Vertex cur = leaf;
    while (true) {
      HALFTREE_CHECK(alive[cur], "path walk reached a removed edge");
      const Vertex nxt = out[cur];
      path.push_back(nxt);
      alive[cur] = 0;
      ++removed;
      if (nxt > n) break;           // root vertex
      if (on_cycle(nxt)) break;     // the cycle of the component
      if (indeg[nxt] >= 2) break;   // fork
      if (nxt < leaf) break;        // smaller than the leaf
      cur = nxt;
    }
    if (in.m0 != nullptr) {
      const bool starts = edge_in_m0(path[0], path[1]);
      result.starts_with_m0.push_back(starts);
      if (pattern_ok) {
        for (std::size_t t = 0; t + 2 < path.size(); ++t)
          HALFTREE_CHECK(edge_in_m0(path[t], path[t + 1]) != edge_in_m0(path[t + 1], path[t + 2]),
                         "stripped path is not alternating");
      }
      if (!starts || (path.size() - 1) % 2 != 0) pattern_ok = false;
    }
    result.paths.push_back(std::move(path));
  }
  HALFTREE_CHECK(removed == alive_count, "paths do not partition the branch edges");
  return result;
}

}  // namespace halftree::detail
