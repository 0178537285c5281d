#include "halftree/forests.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "functional_graph.hpp"
#include "halftree/check.hpp"
#include "halftree/permutation.hpp"

namespace halftree {

std::string SpanningForest::str() const {
  std::ostringstream os;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > 1) os << ' ';
    os << v << '>' << out[v];
  }
  return os.str();
}

namespace {

bool closes_cycle(const std::vector<Vertex>& out, int n, Vertex v) {
  // out[v] was just set; any new cycle must pass through v
  Vertex cur = out[v];
  while (cur >= 1 && cur <= n && out[cur] != 0) {
    if (cur == v) return true;
    cur = out[cur];
  }
  return false;
}

void forests_rec(const RootedGraph& g, std::vector<Vertex>& out, Vertex v,
                 std::vector<SpanningForest>& acc) {
  if (v > g.n()) {
    acc.push_back(SpanningForest{g.n(), g.r(), out});
    return;
  }
  for (Vertex w : g.neighbors(v)) {
    out[v] = w;
    if (!closes_cycle(out, g.n(), v)) forests_rec(g, out, v + 1, acc);
    out[v] = 0;
  }
}

}  // namespace

std::vector<SpanningForest> enumerate_spanning_forests(const RootedGraph& g) {
  std::vector<SpanningForest> acc;
  if (g.n() == 0) return acc;
  std::vector<Vertex> out(g.n() + 1, 0);
  forests_rec(g, out, 1, acc);
  return acc;
}

bool is_compatible(const SpanningForest& f, const PerfectMatching& m0) {
  for (auto [i, j] : m0.pairs())
    if (!f.contains_edge(i, j)) return false;
  return true;
}

namespace {

PathDecomposition strip_forest(const SpanningForest& f, const PerfectMatching* m0) {
  detail::DecomposeInput in;
  in.out = &f.out;
  in.n = f.n;
  in.m0 = m0;
  auto res = detail::strip_paths(in);
  return PathDecomposition{std::move(res.paths), std::move(res.starts_with_m0)};
}

}  // namespace

PathDecomposition trim(const SpanningForest& f) { return strip_forest(f, nullptr); }

PathDecomposition trim(const SpanningForest& f, const PerfectMatching& m0) {
  HALFTREE_CHECK(is_compatible(f, m0), "forest is not compatible with the reference");
  return strip_forest(f, &m0);
}

bool satisfies_condition_C(const SpanningForest& f) {
  for (const auto& path : trim(f).paths)
    if ((path.size() - 1) % 2 != 0) return false;
  return true;
}

bool satisfies_condition_C(const SpanningForest& f, const PerfectMatching& m0) {
  const PathDecomposition d = trim(f, m0);
  for (std::size_t i = 0; i < d.paths.size(); ++i) {
    if ((d.paths[i].size() - 1) % 2 != 0) return false;
    if (!d.starts_with_m0[i]) return false;
  }
  return true;
}

std::optional<PerfectMatching> reference_matching_from_trim(const SpanningForest& f) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& path : trim(f).paths) {
    if ((path.size() - 1) % 2 != 0) return std::nullopt;
    for (std::size_t t = 0; t + 1 < path.size(); t += 2)
      pairs.emplace_back(path[t], path[t + 1]);
  }
  return PerfectMatching::from_pairs(f.n, pairs);
}

int forest_sign(const SpanningForest& f, const PerfectMatching& m0) {
  return reference_description_sign(f.out, f.n, m0);
}

Rational pfaffian_via_half_forests(const RootedGraph& g, const PerfectMatching& m0) {
  HALFTREE_CHECK(m0.is_matching_of(g), "reference is not a matching of the graph");
  Rational total;
  for (const SpanningForest& f : enumerate_spanning_forests(g)) {
    if (!is_compatible(f, m0) || !satisfies_condition_C(f, m0)) continue;
    Rational term(forest_sign(f, m0));
    for (Vertex v = 1; v <= f.n; ++v)
      if (!m0.contains(v, f.out[v])) term *= g.weight(v, f.out[v]);
    total += term;
  }
  return total;
}

Rational determinant_via_forests(const RootedGraph& g) {
  HALFTREE_CHECK(g.r() >= 1, "needs at least one root vertex");
  const auto forests = enumerate_spanning_forests(g);
  const auto matchings = enumerate_perfect_matchings(g);

  auto full_weight = [&](const SpanningForest& f) {
    Rational w(1);
    for (Vertex v = 1; v <= f.n; ++v) w *= g.weight(v, f.out[v]);
    return w;
  };

  Rational by_reference;
  std::set<std::string> assigned;  // forests claimed by some reference family
  for (const PerfectMatching& m0 : matchings) {
    for (const SpanningForest& f : forests) {
      if (!is_compatible(f, m0) || !satisfies_condition_C(f, m0)) continue;
      auto [it, fresh] = assigned.insert(f.str());
      HALFTREE_CHECK(fresh, "reference families are not pairwise disjoint");
      by_reference += full_weight(f);
    }
  }

  Rational intrinsic;
  std::size_t intrinsic_count = 0;
  for (const SpanningForest& f : forests) {
    if (!satisfies_condition_C(f)) continue;
    ++intrinsic_count;
    HALFTREE_CHECK(assigned.count(f.str()) == 1,
                   "intrinsic family differs from the union of reference families");
    // the reference is recoverable from the odd-position trimmed edges
    const auto reconstructed = reference_matching_from_trim(f);
    HALFTREE_CHECK(reconstructed.has_value() && is_compatible(f, *reconstructed) &&
                       satisfies_condition_C(f, *reconstructed),
                   "trimmed-edge reconstruction does not return the forest's reference");
    intrinsic += full_weight(f);
  }
  HALFTREE_CHECK(intrinsic_count == assigned.size(),
                 "reference families contain a forest outside the intrinsic family");
  HALFTREE_CHECK(by_reference == intrinsic, "determinant expansions disagree");
  return intrinsic;
}

}  // namespace halftree
