#include "halftree/graph.hpp"

#include <algorithm>
#include <sstream>

#include "halftree/check.hpp"
#include "halftree/permutation.hpp"

namespace halftree {

RootedGraph::RootedGraph(int n, int r, RationalMatrix weights)
    : n_(n), r_(r), weights_(std::move(weights)), neighbors_(n + r + 1) {
  HALFTREE_CHECK(weights_.rows() == n + r && weights_.cols() == n + r,
                 "weight block does not match vertex count");
  for (Vertex v = 1; v <= size(); ++v)
    for (Vertex w = 1; w <= size(); ++w)
      if (has_edge(v, w)) neighbors_[v].push_back(w);
}

std::vector<std::pair<Vertex, Vertex>> RootedGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex i = 1; i <= size(); ++i)
    for (Vertex j = i + 1; j <= size(); ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

RootedGraph graph_from_matrix(const SkewMatrix& m) {
  HALFTREE_CHECK(validate(m, false).antisymmetric(),
                 "graph extraction requires a skew-symmetric matrix");
  return RootedGraph(m.n(), m.r(), m.entries());
}

PerfectMatching PerfectMatching::from_pairs(
    int n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  HALFTREE_CHECK(n >= 0 && n % 2 == 0, "matched vertex set must have even size");
  HALFTREE_CHECK(static_cast<int>(pairs.size()) * 2 == n, "wrong number of pairs");
  PerfectMatching m;
  m.partner_.assign(n + 1, 0);
  for (auto [i, j] : pairs) {
    HALFTREE_CHECK(i >= 1 && i <= n && j >= 1 && j <= n && i != j,
                   "pair endpoint out of range");
    HALFTREE_CHECK(m.partner_[i] == 0 && m.partner_[j] == 0, "pairs are not disjoint");
    m.partner_[i] = j;
    m.partner_[j] = i;
  }
  return m;
}

std::vector<std::pair<Vertex, Vertex>> PerfectMatching::pairs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v = 1; v <= n(); ++v)
    if (v < partner_[v]) out.emplace_back(v, partner_[v]);
  return out;
}

bool PerfectMatching::is_matching_of(const RootedGraph& g) const {
  if (n() != g.n()) return false;
  for (auto [i, j] : pairs())
    if (!g.has_edge(i, j)) return false;
  return true;
}

std::string PerfectMatching::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto [i, j] : pairs()) {
    if (!first) os << ' ';
    os << i << '-' << j;
    first = false;
  }
  return os.str();
}

namespace {

void matchings_rec(const RootedGraph& g, std::vector<Vertex>& partner,
                   std::vector<PerfectMatching>& out) {
  const int n = g.n();
  Vertex v = 0;
  for (Vertex u = 1; u <= n; ++u) {
    if (partner[u] == 0) { v = u; break; }
  }
  if (v == 0) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 1; u <= n; ++u)
      if (u < partner[u]) pairs.emplace_back(u, partner[u]);
    out.push_back(PerfectMatching::from_pairs(n, pairs));
    return;
  }
  for (Vertex w : g.neighbors(v)) {
    if (w > n || partner[w] != 0 || w == v) continue;
    partner[v] = w;
    partner[w] = v;
    matchings_rec(g, partner, out);
    partner[v] = 0;
    partner[w] = 0;
  }
}

}  // namespace

std::vector<PerfectMatching> enumerate_perfect_matchings(const RootedGraph& g) {
  std::vector<PerfectMatching> out;
  if (g.n() % 2 != 0) return out;
  std::vector<Vertex> partner(g.n() + 1, 0);
  matchings_rec(g, partner, out);
  return out;
}

OrientedSuperimposition superimpose_and_orient(const PerfectMatching& m0,
                                               const PerfectMatching& m) {
  HALFTREE_CHECK(m0.n() == m.n(), "matchings live on different vertex sets");
  const int n = m0.n();
  OrientedSuperimposition s;
  std::vector<bool> seen(n + 1, false);
  for (Vertex v = 1; v <= n; ++v) {
    if (seen[v]) continue;
    if (m0.partner(v) == m.partner(v)) {
      // doubled edge, treated as a 2-cycle: reference copy min->max
      Vertex w = m0.partner(v);
      seen[v] = seen[w] = true;
      s.doubled.emplace_back(v, w);
      s.oriented_m0.emplace_back(v, w);
      s.oriented_m.emplace_back(w, v);
      continue;
    }
    // v is the smallest vertex of its alternating cycle; walk m0, m, m0, ...
    std::vector<Vertex> cycle;
    Vertex cur = v;
    bool take_m0 = true;
    do {
      cycle.push_back(cur);
      seen[cur] = true;
      cur = take_m0 ? m0.partner(cur) : m.partner(cur);
      take_m0 = !take_m0;
    } while (cur != v);
    HALFTREE_CHECK(cycle.size() % 2 == 0 && cycle.size() >= 4,
                   "superimposition cycle must be even of length >= 4");
    for (std::size_t t = 0; t < cycle.size(); t += 2)
      s.oriented_m0.emplace_back(cycle[t], cycle[t + 1]);
    for (std::size_t t = 1; t < cycle.size(); t += 2)
      s.oriented_m.emplace_back(cycle[t], cycle[(t + 1) % cycle.size()]);
    s.cycles.push_back(std::move(cycle));
  }
  return s;
}

Rational matching_weight(const OrientedSuperimposition& s, const RootedGraph& g) {
  std::vector<int> description;
  for (auto [x, y] : s.oriented_m0) {
    description.push_back(x);
    description.push_back(y);
  }
  Rational w(permutation_sign(description));
  if ((s.doubled.size() + s.cycles.size()) % 2 != 0) w = -w;
  for (auto [x, y] : s.oriented_m) w *= g.weight(x, y);
  return w;
}

Rational pfaffian_via_matchings(const RootedGraph& g, const PerfectMatching& m0) {
  HALFTREE_CHECK(m0.is_matching_of(g), "reference is not a matching of the graph");
  Rational total;
  for (const PerfectMatching& m : enumerate_perfect_matchings(g))
    total += matching_weight(superimpose_and_orient(m0, m), g);
  return total;
}

int reference_description_sign(const std::vector<Vertex>& out, int n,
                               const PerfectMatching& m0) {
  std::vector<int> description;
  for (auto [i, j] : m0.pairs()) {
    if (i <= n && out[i] == j) {
      description.push_back(i);
      description.push_back(j);
    } else {
      HALFTREE_CHECK(j <= n && out[j] == i, "configuration misses a reference edge");
      description.push_back(j);
      description.push_back(i);
    }
  }
  return permutation_sign(description);
}

int superimposition_sign(const OrientedSuperimposition& s, int n) {
  std::vector<int> image(n + 1, 0);
  for (auto [i, j] : s.doubled) {
    image[i] = j;
    image[j] = i;
  }
  for (const auto& cycle : s.cycles)
    for (std::size_t t = 0; t < cycle.size(); ++t)
      image[cycle[t]] = cycle[(t + 1) % cycle.size()];
  std::vector<int> one_line(image.begin() + 1, image.end());
  return permutation_sign(one_line);
}

}  // namespace halftree
