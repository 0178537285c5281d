#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halftree/graph.hpp"

namespace halftree {

/// Oriented spanning forest: every vertex of V has one out-edge, no cycle
/// within V, so each component is a tree rooted at a vertex of R with edges
/// pointing to the root.
struct SpanningForest {
  int n = 0;
  int r = 0;
  std::vector<Vertex> out;  // 1-based; out[v] defined for v in 1..n

  bool contains_edge(Vertex i, Vertex j) const {
    return (i <= n && out[i] == j) || (j <= n && out[j] == i);
  }
  std::string str() const;  // "1>4 2>3 ..."

  friend bool operator==(const SpanningForest& a, const SpanningForest& b) {
    return a.n == b.n && a.r == b.r && a.out == b.out;
  }
};

/// Ordered paths produced by the trimming / reverse algorithms.
struct PathDecomposition {
  std::vector<std::vector<Vertex>> paths;
  std::vector<bool> starts_with_m0;  // per path; filled when a reference was given
};

std::vector<SpanningForest> enumerate_spanning_forests(const RootedGraph& g);

bool is_compatible(const SpanningForest& f, const PerfectMatching& m0);

/// Trimming: repeatedly strip the path from the largest-labelled leaf until
/// the first root vertex, fork, or vertex smaller than the leaf; remove it;
/// repeat until no edges remain.
PathDecomposition trim(const SpanningForest& f);
/// Same, recording per-path reference-start flags; asserts each path
/// alternates between reference and non-reference edges.
PathDecomposition trim(const SpanningForest& f, const PerfectMatching& m0);

/// Intrinsic variant: every trimmed path has even length.
bool satisfies_condition_C(const SpanningForest& f);
/// Matched variant: every trimmed path has even length and starts with a
/// reference edge.
bool satisfies_condition_C(const SpanningForest& f, const PerfectMatching& m0);

/// Reconstructs the unique reference matching from the odd-position edges of
/// the trimmed paths; nullopt when some path has odd length.
std::optional<PerfectMatching> reference_matching_from_trim(const SpanningForest& f);

/// Sign of the permutation described by the reference pairs, each oriented as
/// it appears inside the forest.
int forest_sign(const SpanningForest& f, const PerfectMatching& m0);

/// Sum over compatible forests passing the matched condition of
/// sign * product of non-reference oriented edge weights. Equals the
/// Pfaffian of the matrix restricted to V.
Rational pfaffian_via_half_forests(const RootedGraph& g, const PerfectMatching& m0);

/// Both determinant expansions (per reference matching, and intrinsic);
/// asserts they agree, that per-reference families are pairwise disjoint and
/// exhaust the intrinsic family, and returns the common value.
Rational determinant_via_forests(const RootedGraph& g);

}  // namespace halftree
