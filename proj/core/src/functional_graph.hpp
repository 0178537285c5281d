#pragma once

// Internal helpers shared by the forest / RCRSF / CRSF code paths. Not
// installed.

#include <optional>
#include <vector>

#include "halftree/graph.hpp"

namespace halftree::detail {

/// Cycles of the functional graph given by out-edges on V = {1..n} (edges
/// leaving V terminate the walk). Each cycle is listed in out-edge order,
/// rotated so its smallest vertex comes first; cycles sorted by that vertex.
std::vector<std::vector<Vertex>> functional_cycles(const std::vector<Vertex>& out, int n);

struct DecomposeInput {
  const std::vector<Vertex>* out = nullptr;  // 1-based; out[0] unused
  int n = 0;
  std::vector<char> on_cycle;                // size n+1 (may be empty = none)
  const PerfectMatching* m0 = nullptr;       // when set: record start flags, assert alternation
};

struct DecomposeResult {
  std::vector<std::vector<Vertex>> paths;
  std::vector<bool> starts_with_m0;  // filled only when m0 given
};

/// Largest-leaf path stripping common to the trimming and reverse
/// algorithms: walk from the largest leaf toward the root (or cycle), stop at
/// a root vertex, a vertex of a cycle, a fork, or a vertex smaller than the
/// leaf; delete the path; repeat until only cycles (or nothing) remain.
DecomposeResult strip_paths(const DecomposeInput& in);

}  // namespace halftree::detail
