#pragma once

#include <map>
#include <string>
#include <vector>

#include "halftree/forests.hpp"
#include "halftree/graph.hpp"

namespace halftree {

/// Rooted-or-cycle-rooted spanning forest: every vertex of V has one
/// out-edge; components are trees rooted at R vertices or trees rooted on
/// cycles within V (unicycles), cycle edges oriented one way around.
struct Rcrsf {
  int n = 0;
  int r = 0;
  std::vector<Vertex> out;  // 1-based

  std::vector<std::vector<Vertex>> cycles() const;  // min-vertex-first, sorted
  bool cycles_only() const;
  bool contains_edge(Vertex i, Vertex j) const {
    return (i <= n && out[i] == j) || (j <= n && out[j] == i);
  }
  std::string str() const;

  friend bool operator==(const Rcrsf& a, const Rcrsf& b) {
    return a.n == b.n && a.r == b.r && a.out == b.out;
  }
};

/// One configuration of the opening procedure: the reference matching with
/// its current edge orientations, the working copy rewritten by openings,
/// the doubled edges still to open, and the bookkeeping that defines its
/// weight.
struct OpenConfig {
  std::vector<std::pair<Vertex, Vertex>> m0_oriented;  // one per reference pair
  std::vector<std::pair<Vertex, Vertex>> m_side;       // working directed edges
  std::vector<std::pair<Vertex, Vertex>> doubled;      // unopened, i < j
  int initial_doubled = 0;
  int initial_cycles = 0;
  int opened = 0;
  int sign = 1;  // running sign of the reference description
  std::vector<std::vector<Vertex>> opening_paths;  // provenance

  bool finished() const { return doubled.empty(); }
  /// All directed edges (reference copies plus working copies).
  std::vector<std::pair<Vertex, Vertex>> directed_edges() const;
  /// Out-edge map; valid because every V vertex has exactly one out-edge.
  std::vector<Vertex> out_map(int n) const;
  std::string key(int n) const;  // canonical serialization of the out-map
};

struct WeightedItem {
  OpenConfig config;
  Rational weight;
};

struct WeightedOutputSet {
  std::vector<WeightedItem> items;
  Rational total_weight() const;
};

/// One round of the opening of doubled edges, starting from an oriented
/// superimposition: repeatedly rewrite the working copy of the doubled edge
/// at the smallest doubled vertex over the partner's other neighbours,
/// descending into doubled edges that get hit, emitting configurations that
/// land elsewhere. Odd loops are removed in cancelling pairs. Total weight is
/// preserved.
WeightedOutputSet open_step1(const OrientedSuperimposition& s, const RootedGraph& g);

/// Iterates the opening until no doubled edges remain. Every output is an
/// RCRSF compatible with m0; the total weight equals the contribution of m to
/// the Pfaffian.
WeightedOutputSet run_complete(const PerfectMatching& m0, const PerfectMatching& m,
                               const RootedGraph& g);

Rcrsf rcrsf_from_config(const OpenConfig& config, int n, int r);

/// Largest-leaf path stripping, stopping at roots, cycles, forks, or smaller
/// vertices; cycles are left in place. Rejects cycles-only input.
PathDecomposition partial_reverse(const Rcrsf& f);
PathDecomposition partial_reverse(const Rcrsf& f, const PerfectMatching& m0);

/// Cycles-only configurations qualify; otherwise every stripped path must
/// have even length and start with a reference edge.
bool rcrsf_condition_C(const Rcrsf& f, const PerfectMatching& m0);

bool rcrsf_compatible(const Rcrsf& f, const PerfectMatching& m0);

/// The 2^k perfect matchings obtained by keeping reference edges everywhere
/// and switching any subset of cycles to their complementary edges.
std::vector<PerfectMatching> matchings_from_rcrsf(const Rcrsf& f, const PerfectMatching& m0);

/// All RCRSFs compatible with m0 (both orientations of every cycle).
std::vector<Rcrsf> enumerate_rcrsf(const RootedGraph& g, const PerfectMatching& m0);

struct CorrespondenceReport {
  bool passed = true;
  std::vector<std::string> problems;
  int structures = 0;          // condition-C structures (cycles unoriented)
  int forest_outputs = 0;      // outputs with no cycles
  Rational forest_sum;         // their total weight
  Rational unicycle_residue;   // total weight of outputs with cycles; must be 0
  std::string str() const;
};

/// Runs the complete algorithm for every perfect matching and checks the
/// output multiset against the condition-C RCRSF family: each structure with
/// k cycles appears once per of the 2^k initial matchings with the predicted
/// orientation, weight and provenance; unicycle weights cancel; the surviving
/// forest sum equals the half-forest Pfaffian expansion.
CorrespondenceReport verify_correspondence(const RootedGraph& g, const PerfectMatching& m0);

}  // namespace halftree
