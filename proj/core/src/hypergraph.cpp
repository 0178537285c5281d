#include "halftree/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "halftree/check.hpp"
#include "halftree/permutation.hpp"
#include "halftree/polynomial.hpp"
#include "halftree/rng.hpp"

namespace halftree {

HyperWeights::HyperWeights(int v_count) : v_(v_count) {
  HALFTREE_CHECK(v_count >= 3, "need at least three vertices");
  for (int i = 1; i <= v_; ++i)
    for (int j = i + 1; j <= v_; ++j)
      for (int k = j + 1; k <= v_; ++k) triples_.push_back({i, j, k});
  values_.assign(triples_.size(), Rational(0));
}

int HyperWeights::triple_index(int i, int j, int k) const {
  HALFTREE_CHECK(1 <= i && i < j && j < k && k <= v_, "triple must be sorted and in range");
  const auto it = std::lower_bound(triples_.begin(), triples_.end(),
                                   std::array<int, 3>{i, j, k});
  HALFTREE_CHECK(it != triples_.end() && *it == (std::array<int, 3>{i, j, k}),
                 "triple not found");
  return static_cast<int>(it - triples_.begin());
}

Rational HyperWeights::at(int i, int j, int k) const {
  if (i == j || j == k || i == k) return Rational(0);
  std::array<int, 3> sorted{i, j, k};
  std::sort(sorted.begin(), sorted.end());
  const int sign = permutation_sign(std::vector<int>{i, j, k});
  const Rational& base = values_[triple_index(sorted[0], sorted[1], sorted[2])];
  return sign > 0 ? base : -base;
}

void HyperWeights::set_sorted(int i, int j, int k, const Rational& value) {
  values_[triple_index(i, j, k)] = value;
}

HyperWeights HyperWeights::random(int v_count, std::uint64_t seed, int bound) {
  HyperWeights y(v_count);
  Rng rng(seed);
  for (const auto& t : y.triples_) y.set_sorted(t[0], t[1], t[2], rng.nonzero_rational(bound));
  return y;
}

SkewMatrix matrix_from_hyperweights(const HyperWeights& y) {
  const int v = y.v_count();
  SkewMatrix m(v - 1, 1);
  for (int i = 1; i <= v; ++i) {
    for (int j = i + 1; j <= v; ++j) {
      Rational sum;
      for (int k = 1; k <= v; ++k) sum += y.at(i, j, k);
      m.set_pair(i - 1, j - 1, sum);
    }
  }
  HALFTREE_CHECK(validate(m, true).passed(),
                 "triple weights did not produce a zero-column-sum matrix");
  return m;
}

std::string ThreeGraphTree::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : hyperedges) {
    if (!first) os << ' ';
    os << e[0] << e[1] << e[2];
    first = false;
  }
  return os.str();
}

namespace {

/// Union-find acyclicity/connectivity test of the bipartite representation:
/// black vertices 1..v plus one white vertex per triple.
bool is_spanning_3tree(const std::vector<std::array<int, 3>>& edges, int v) {
  std::vector<int> parent(v + 1);
  for (int i = 0; i <= v; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    // joining the triple's three vertices must not close a cycle
    for (int t = 1; t < 3; ++t) {
      const int a = find(e[0]), b = find(e[t]);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  int components = 0;
  for (int i = 1; i <= v; ++i)
    if (find(i) == i) ++components;
  return components == 1;
}

void trees_rec(int v, int needed, int from, std::vector<std::array<int, 3>>& chosen,
               const std::vector<std::array<int, 3>>& all, std::vector<ThreeGraphTree>& acc) {
  if (static_cast<int>(chosen.size()) == needed) {
    if (is_spanning_3tree(chosen, v)) acc.push_back(ThreeGraphTree{chosen});
    return;
  }
  for (int t = from; t < static_cast<int>(all.size()); ++t) {
    chosen.push_back(all[t]);
    trees_rec(v, needed, t + 1, chosen, all, acc);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<ThreeGraphTree> enumerate_3graph_trees(int v_count) {
  HALFTREE_CHECK(v_count >= 3 && v_count % 2 == 1, "vertex count must be odd and >= 3");
  std::vector<std::array<int, 3>> all;
  for (int i = 1; i <= v_count; ++i)
    for (int j = i + 1; j <= v_count; ++j)
      for (int k = j + 1; k <= v_count; ++k) all.push_back({i, j, k});
  std::vector<ThreeGraphTree> acc;
  std::vector<std::array<int, 3>> chosen;
  trees_rec(v_count, (v_count - 1) / 2, 0, chosen, all, acc);
  return acc;
}

namespace {

/// Pfaffian of a skew polynomial matrix by the pairing expansion.
Polynomial polynomial_pfaffian(const std::vector<std::vector<Polynomial>>& a) {
  const int s = static_cast<int>(a.size());
  if (s % 2 != 0) return Polynomial();
  Polynomial total;
  std::vector<int> description;
  std::vector<bool> used(s, false);
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < s; ++i) {
      if (!used[i]) { first = i; break; }
    }
    if (first < 0) {
      Polynomial term = Polynomial::constant(Rational(permutation_sign(description)));
      for (std::size_t t = 0; t + 1 < description.size(); t += 2)
        term = term * a[description[t]][description[t + 1]];
      total += term;
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < s; ++j) {
      if (used[j]) continue;
      used[j] = true;
      description.push_back(first);
      description.push_back(j);
      self(self);
      description.pop_back();
      description.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec(rec);
  return total;
}

}  // namespace

MvReport verify_mv_identity(int v_count, std::uint64_t respecialization_seed) {
  HALFTREE_CHECK(v_count % 2 == 1 && v_count >= 3 && v_count <= 7,
                 "symbolic expansion supported for odd v_count up to 7");
  MvReport rep;
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.problems.push_back(std::move(msg));
  };

  const HyperWeights index(v_count);  // variable ids = triple indices
  const int n = v_count - 1;

  // symbolic skew matrix of the full v x v weights, minor of the last vertex
  std::vector<std::vector<Polynomial>> minor(n, std::vector<Polynomial>(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Polynomial entry;
      for (int k = 1; k <= v_count; ++k) {
        if (k == i || k == j) continue;
        std::array<int, 3> sorted{i, j, k};
        std::sort(sorted.begin(), sorted.end());
        const int sign = permutation_sign(std::vector<int>{i, j, k});
        const Polynomial var = Polynomial::variable(
            index.triple_index(sorted[0], sorted[1], sorted[2]));
        entry += sign > 0 ? var : -var;
      }
      minor[i - 1][j - 1] = entry;
      minor[j - 1][i - 1] = -entry;
    }
  }
  const Polynomial pf = polynomial_pfaffian(minor);

  std::map<Monomial, ThreeGraphTree> expected;
  for (const ThreeGraphTree& t : enumerate_3graph_trees(v_count)) {
    Monomial m;
    for (const auto& e : t.hyperedges) m.push_back(index.triple_index(e[0], e[1], e[2]));
    std::sort(m.begin(), m.end());
    expected.emplace(std::move(m), t);
  }

  for (const auto& [monomial, coeff] : pf.terms()) {
    auto it = expected.find(monomial);
    if (it == expected.end()) {
      fail("monomial outside the spanning-tree support");
      continue;
    }
    if (!(coeff == Rational(1) || coeff == Rational(-1))) {
      fail("non-unit coefficient on tree " + it->second.str());
      continue;
    }
    rep.terms.push_back({it->second, coeff == Rational(1) ? 1 : -1});
  }
  if (pf.terms().size() != expected.size())
    fail("tree count and monomial count differ");

  // numeric re-specialization
  const HyperWeights y = HyperWeights::random(v_count, respecialization_seed, 9);
  std::vector<Rational> values(y.triple_count());
  for (int t = 0; t < y.triple_count(); ++t) {
    const auto& tr = y.triples()[t];
    values[t] = y.at(tr[0], tr[1], tr[2]);
  }
  const SkewMatrix a = matrix_from_hyperweights(y);
  const Rational numeric = pfaffian_by_pairings(principal_submatrix(a, 1));
  if (!(pf.evaluate(values) == numeric))
    fail("symbolic expansion does not re-specialize to the numeric Pfaffian");
  Rational tree_sum;
  for (const auto& term : rep.terms) {
    Rational product(term.sign);
    for (const auto& e : term.tree.hyperedges) product *= y.at(e[0], e[1], e[2]);
    tree_sum += product;
  }
  if (!(tree_sum == numeric))
    fail("signed tree sum does not match the numeric Pfaffian");
  return rep;
}

PartitionReport compatible_matching_partition(int v_count) {
  HALFTREE_CHECK(v_count % 2 == 1 && v_count >= 3, "vertex count must be odd");
  PartitionReport rep;
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.problems.push_back(std::move(msg));
  };

  const int n = v_count - 1;
  // complete graph on {1..n} for matching enumeration
  SkewMatrix complete(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) complete.set_pair(i, j, Rational(1));
  const RootedGraph g = graph_from_matrix(complete);
  const auto matchings = enumerate_perfect_matchings(g);

  std::map<std::string, std::size_t> class_of;
  for (std::size_t c = 0; c < matchings.size(); ++c) {
    rep.classes.push_back({matchings[c], {}});
    class_of[matchings[c].str()] = c;
  }

  const auto trees = enumerate_3graph_trees(v_count);
  for (const ThreeGraphTree& t : trees) {
    std::vector<std::size_t> hits;
    for (std::size_t c = 0; c < matchings.size(); ++c) {
      const PerfectMatching& m = matchings[c];
      bool ok = true;
      for (const auto& e : t.hyperedges) {
        int pairs_in_m = 0;
        for (int u = 0; u < 3; ++u)
          for (int w = u + 1; w < 3; ++w)
            if (e[u] <= n && e[w] <= n && m.contains(e[u], e[w])) ++pairs_in_m;
        if (pairs_in_m != 1) { ok = false; break; }
      }
      if (ok) hits.push_back(c);
    }
    if (hits.size() != 1) {
      fail("tree " + t.str() + " is compatible with " + std::to_string(hits.size()) +
           " matchings");
      continue;
    }
    rep.classes[hits[0]].trees.push_back(t);
  }

  // class sizes must all equal v_count^{(n/2)-1}
  std::size_t expected_size = 1;
  for (int e = 0; e < n / 2 - 1; ++e) expected_size *= static_cast<std::size_t>(v_count);
  std::size_t total = 0;
  for (const auto& cls : rep.classes) {
    total += cls.trees.size();
    if (cls.trees.size() != expected_size)
      fail("class " + cls.matching.str() + " has size " + std::to_string(cls.trees.size()) +
           ", expected " + std::to_string(expected_size));
  }
  if (total != trees.size()) fail("classes do not partition the tree set");
  return rep;
}

SpanningForest halftree_from_3tree(const ThreeGraphTree& t, const PerfectMatching& m) {
  const int n = m.n();
  const int v = n + 1;
  std::set<std::pair<int, int>> edges;
  for (const auto& e : t.hyperedges) {
    // locate the unique matching pair inside the hyperedge
    int i = 0, j = 0, k = 0, found = 0;
    for (int u = 0; u < 3; ++u) {
      for (int w = u + 1; w < 3; ++w) {
        if (e[u] <= n && e[w] <= n && m.contains(e[u], e[w])) {
          i = e[u];
          j = e[w];
          k = e[0] + e[1] + e[2] - i - j;
          ++found;
        }
      }
    }
    if (found != 1)
      throw std::invalid_argument("hyperedge " + t.str() + " is not compatible with " + m.str());
    edges.insert({std::min(i, j), std::max(i, j)});
    edges.insert({std::min(j, k), std::max(j, k)});
  }
  HALFTREE_CHECK(static_cast<int>(edges.size()) == n, "edge configuration is not a tree");

  // orient toward the root v
  std::vector<std::vector<int>> adj(v + 1);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<Vertex> out(n + 1, 0);
  std::vector<char> visited(v + 1, 0);
  std::vector<int> stack{v};
  visited[v] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int nb : adj[cur]) {
      if (visited[nb]) continue;
      visited[nb] = 1;
      out[nb] = cur;
      stack.push_back(nb);
      ++reached;
    }
  }
  HALFTREE_CHECK(reached == v, "edge configuration is not spanning");
  return SpanningForest{n, 1, std::move(out)};
}

}  // namespace halftree
