#pragma once

#include <string>
#include <utility>
#include <vector>

#include "halftree/skew_matrix.hpp"

namespace halftree {

using Vertex = int;  // 1-based labels; roots are n+1..n+r

/// Weighted graph extracted from a skew matrix: vertices 1..n+r, an edge
/// wherever the entry is nonzero, and the skew weight function on oriented
/// edges.
class RootedGraph {
 public:
  RootedGraph(int n, int r, RationalMatrix weights);

  int n() const { return n_; }
  int r() const { return r_; }
  int size() const { return n_ + r_; }
  bool is_root(Vertex v) const { return v > n_; }

  const Rational& weight(Vertex i, Vertex j) const { return weights_.at(i - 1, j - 1); }
  bool has_edge(Vertex i, Vertex j) const { return i != j && !weight(i, j).is_zero(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[v]; }

  std::vector<std::pair<Vertex, Vertex>> edges() const;  // i < j

 private:
  int n_, r_;
  RationalMatrix weights_;
  std::vector<std::vector<Vertex>> neighbors_;  // ascending
};

RootedGraph graph_from_matrix(const SkewMatrix& m);

/// Perfect matching of the non-root part V = {1..n}.
class PerfectMatching {
 public:
  static PerfectMatching from_pairs(int n, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  int n() const { return static_cast<int>(partner_.size()) - 1; }
  Vertex partner(Vertex v) const { return partner_[v]; }
  bool contains(Vertex i, Vertex j) const { return partner_[i] == j; }
  std::vector<std::pair<Vertex, Vertex>> pairs() const;  // i < j, ascending

  bool is_matching_of(const RootedGraph& g) const;
  std::string str() const;  // "1-4 2-3"

  friend bool operator==(const PerfectMatching& a, const PerfectMatching& b) {
    return a.partner_ == b.partner_;
  }
  friend bool operator<(const PerfectMatching& a, const PerfectMatching& b) {
    return a.partner_ < b.partner_;
  }

 private:
  std::vector<Vertex> partner_;  // index 0 unused
};

/// All perfect matchings of the induced graph on V, smallest-unmatched-vertex
/// recursion order.
std::vector<PerfectMatching> enumerate_perfect_matchings(const RootedGraph& g);

/// Superimposition of two perfect matchings: doubled edges plus alternating
/// even cycles, with every cycle oriented compatibly with the edge from its
/// smallest vertex to that vertex's reference partner.
struct OrientedSuperimposition {
  std::vector<std::pair<Vertex, Vertex>> doubled;  // i < j
  std::vector<std::vector<Vertex>> cycles;         // oriented, min vertex first
  std::vector<std::pair<Vertex, Vertex>> oriented_m0;
  std::vector<std::pair<Vertex, Vertex>> oriented_m;
};

OrientedSuperimposition superimpose_and_orient(const PerfectMatching& m0,
                                               const PerfectMatching& m);

/// Signed contribution of the generic matching of `s` to the Pfaffian.
Rational matching_weight(const OrientedSuperimposition& s, const RootedGraph& g);

/// Sum of matching weights over all perfect matchings; equals the Pfaffian of
/// the matrix restricted to V, for any reference matching m0.
Rational pfaffian_via_matchings(const RootedGraph& g, const PerfectMatching& m0);

/// Sign of the permutation whose cycle decomposition is the superimposition
/// (doubled edges as transpositions).
int superimposition_sign(const OrientedSuperimposition& s, int n);

/// Sign of the permutation described by the reference pairs, each oriented as
/// it appears inside an oriented configuration (given by out-edges on V).
int reference_description_sign(const std::vector<Vertex>& out, int n,
                               const PerfectMatching& m0);

}  // namespace halftree
