#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "halftree/forests.hpp"
#include "halftree/graph.hpp"
#include "halftree/skew_matrix.hpp"

namespace halftree {

/// Fully antisymmetric weights on vertex triples of {1..v_count}:
/// y(i,j,k) = -y(j,i,k) = y(j,k,i), zero on repeated indices.
class HyperWeights {
 public:
  explicit HyperWeights(int v_count);

  int v_count() const { return v_; }
  int triple_count() const { return static_cast<int>(triples_.size()); }
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }
  int triple_index(int i, int j, int k) const;  // requires i < j < k

  Rational at(int i, int j, int k) const;  // antisymmetric lookup
  void set_sorted(int i, int j, int k, const Rational& value);

  static HyperWeights random(int v_count, std::uint64_t seed, int bound);

 private:
  int v_;
  std::vector<std::array<int, 3>> triples_;  // lexicographic
  std::vector<Rational> values_;
};

/// (v x v) matrix a_ij = sum_k y(i,j,k); skew with zero column sums by
/// antisymmetry.
SkewMatrix matrix_from_hyperweights(const HyperWeights& y);

/// Spanning tree of the complete 3-uniform hypergraph: (v-1)/2 triples whose
/// bipartite representation is a spanning tree.
struct ThreeGraphTree {
  std::vector<std::array<int, 3>> hyperedges;  // each sorted; list sorted
  std::string str() const;                     // "123 145"

  friend bool operator==(const ThreeGraphTree& a, const ThreeGraphTree& b) {
    return a.hyperedges == b.hyperedges;
  }
  friend bool operator<(const ThreeGraphTree& a, const ThreeGraphTree& b) {
    return a.hyperedges < b.hyperedges;
  }
};

std::vector<ThreeGraphTree> enumerate_3graph_trees(int v_count);

struct MvTreeTerm {
  ThreeGraphTree tree;
  int sign = 0;  // coefficient of the tree's monomial in the symbolic Pfaffian
};

struct MvReport {
  bool passed = true;
  std::vector<std::string> problems;
  std::vector<MvTreeTerm> terms;
};

/// Expands the Pfaffian of the matrix minor symbolically in the triple
/// weights and checks the monomial support is exactly the spanning-tree set
/// with unit coefficients; re-specializes at random rationals as a numeric
/// cross-check.
MvReport verify_mv_identity(int v_count, std::uint64_t respecialization_seed);

struct MatchingClass {
  PerfectMatching matching;
  std::vector<ThreeGraphTree> trees;
};

struct PartitionReport {
  bool passed = true;
  std::vector<std::string> problems;
  std::vector<MatchingClass> classes;
};

/// Groups trees by the perfect matching of K_{v-1} such that every hyperedge
/// contains exactly one matching pair; checks the grouping is a partition
/// with equal class sizes.
PartitionReport compatible_matching_partition(int v_count);

/// Full edge configuration on K_v built from a compatible tree: per
/// hyperedge, the matching pair (i,j) with i < j plus the companion edge
/// (j,k); returned oriented toward the root v. Throws if the result is not a
/// spanning tree.
SpanningForest halftree_from_3tree(const ThreeGraphTree& t, const PerfectMatching& m);

}  // namespace halftree
