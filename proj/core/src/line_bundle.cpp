#include "halftree/line_bundle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "functional_graph.hpp"
#include "halftree/check.hpp"
#include "halftree/rng.hpp"

namespace halftree {

void Connection::set(Vertex i, Vertex j, const Rational& value) {
  HALFTREE_CHECK(i != j, "no transport on a loop edge");
  HALFTREE_CHECK(!value.is_zero(), "parallel transport must be nonzero");
  auto it = psi_.find({i, j});
  if (it != psi_.end()) {
    HALFTREE_CHECK(it->second == value, "conflicting transport for an oriented edge");
    return;
  }
  psi_[{i, j}] = value;
  psi_[{j, i}] = value.inverse();
}

const Rational& Connection::at(Vertex i, Vertex j) const {
  auto it = psi_.find({i, j});
  if (it == psi_.end())
    throw std::invalid_argument("connection undefined on edge " + std::to_string(i) + "," +
                                std::to_string(j));
  return it->second;
}

bool Connection::defined(Vertex i, Vertex j) const { return psi_.count({i, j}) > 0; }

Connection Connection::ones(const RootedGraph& g) {
  Connection c;
  for (auto [i, j] : g.edges()) c.set(i, j, Rational(1));
  return c;
}

Connection Connection::random(const RootedGraph& g, std::uint64_t seed, int bound) {
  Rng rng(seed);
  Connection c;
  for (auto [i, j] : g.edges()) c.set(i, j, rng.nonzero_rational(bound));
  return c;
}

Connection read_connection(std::istream& is) {
  Connection c;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    Vertex i = 0, j = 0;
    std::string token;
    if (!(ls >> i)) continue;  // blank line
    if (!(ls >> j >> token)) throw ParseError("bad connection line '" + line + "'");
    const Rational value = Rational::parse(token);
    if (value.is_zero()) throw ParseError("zero transport in '" + line + "'");
    if (c.defined(i, j) && !(c.at(i, j) == value))
      throw ParseError("reciprocal cross-check failed on edge " + std::to_string(i) + "," +
                       std::to_string(j));
    c.set(i, j, value);
  }
  return c;
}

void write_connection(std::ostream& os, const Connection& c) {
  for (const auto& [edge, value] : c.transports()) {
    if (edge.first < edge.second)
      os << edge.first << ' ' << edge.second << ' ' << value << '\n';
  }
}

RationalMatrix twist(const SkewMatrix& a, const Connection& c) {
  HALFTREE_CHECK(validate(a, false).antisymmetric(), "twist input must be skew-symmetric");
  const int s = a.size();
  RationalMatrix out(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (a.at(i, j).is_zero()) continue;
      if (!c.defined(i + 1, j + 1))
        throw std::invalid_argument("connection missing on edge " + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1));
      out.at(i, j) = a.at(i, j) * c.at(i + 1, j + 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CRSFs

std::vector<std::vector<Vertex>> Crsf::cycles() const {
  return detail::functional_cycles(out, n);
}

bool Crsf::cycles_only() const {
  std::vector<char> on_cycle(n + 1, 0);
  for (const auto& c : cycles())
    for (Vertex v : c) on_cycle[v] = 1;
  for (Vertex v = 1; v <= n; ++v)
    if (!on_cycle[v]) return false;
  return true;
}

std::string Crsf::str() const {
  std::ostringstream os;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > 1) os << ' ';
    os << v << '>' << out[v];
  }
  return os.str();
}

namespace {

void crsf_rec(const RootedGraph& g, std::vector<Vertex>& out, Vertex v,
              std::vector<Crsf>& acc) {
  const int n = g.n();
  if (v > n) {
    Crsf f{n, out};
    for (const auto& cycle : f.cycles())
      if (cycle.size() < 3) return;
    acc.push_back(std::move(f));
    return;
  }
  for (Vertex w : g.neighbors(v)) {
    if (w > n) continue;                      // rootless
    if (w < v && out[w] == v) continue;       // 2-cycle
    out[v] = w;
    crsf_rec(g, out, v + 1, acc);
    out[v] = 0;
  }
}

}  // namespace

std::vector<Crsf> enumerate_crsf(const RootedGraph& g) {
  std::vector<Crsf> acc;
  if (g.n() == 0) return acc;
  std::vector<Vertex> out(g.n() + 1, 0);
  crsf_rec(g, out, 1, acc);
  return acc;
}

bool crsf_condition_C(const Crsf& f) {
  if (f.cycles_only()) return true;
  detail::DecomposeInput in;
  in.out = &f.out;
  in.n = f.n;
  in.on_cycle.assign(f.n + 1, 0);
  for (const auto& c : f.cycles())
    for (Vertex v : c) in.on_cycle[v] = 1;
  for (const auto& path : detail::strip_paths(in).paths)
    if ((path.size() - 1) % 2 != 0) return false;
  return true;
}

Rational crsf_weight(const Crsf& f, const RootedGraph& g, const Connection& c) {
  const auto cycles = f.cycles();
  std::vector<char> on_cycle(f.n + 1, 0);
  for (const auto& cyc : cycles)
    for (Vertex v : cyc) on_cycle[v] = 1;

  Rational w(1);
  for (Vertex v = 1; v <= f.n; ++v)
    if (!on_cycle[v]) w *= g.weight(v, f.out[v]);

  for (const auto& cyc : cycles) {
    Rational edge_product(1);
    Rational monodromy(1);
    for (Vertex v : cyc) {
      edge_product *= g.weight(v, f.out[v]);
      monodromy *= c.at(v, f.out[v]);
    }
    const Rational factor = cyc.size() % 2 == 1
                                ? monodromy - monodromy.inverse()
                                : Rational(2) - monodromy - monodromy.inverse();
    w *= edge_product * factor;
  }
  return w;
}

namespace {

bool cycles_canonical(const Crsf& f) {
  for (const auto& cyc : f.cycles())
    if (cyc[1] > cyc.back()) return false;  // min vertex must step to its smaller neighbour
  return true;
}

}  // namespace

Rational det_via_crsf(const SkewMatrix& a, const Connection& c) {
  HALFTREE_CHECK(a.size() % 2 == 0, "even matrix size required");
  HALFTREE_CHECK(validate(a, true).passed(),
                 "twisted determinant expansion needs a zero-column-sum skew matrix");
  const RootedGraph g(a.size(), 0, a.entries());
  Rational total;
  for (const Crsf& f : enumerate_crsf(g)) {
    if (!cycles_canonical(f)) continue;
    if (!crsf_condition_C(f)) continue;
    total += crsf_weight(f, g, c);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Cycle-cover determinant expansion

namespace {

struct CoverState {
  const SkewMatrix* a = nullptr;
  int s = 0;
  std::vector<char> covered;
  Rational total;
};

void cover_from(CoverState& st, const Rational& factor, int odd_cycles);

void grow_cycle(CoverState& st, std::vector<int>& path, const Rational& walked,
                const Rational& factor, int odd_cycles) {
  const int v = path.front();
  const int cur = path.back();
  // close the cycle
  if (path.size() == 2 && !st.a->at(cur, v).is_zero()) {
    const Rational term = st.a->at(v, cur) * st.a->at(v, cur);
    cover_from(st, factor * term, odd_cycles);
  }
  if (path.size() >= 3 && path[1] < cur && !st.a->at(cur, v).is_zero()) {
    const bool odd = path.size() % 2 == 1;
    const Rational term = odd ? Rational(0) : Rational(-2) * walked * st.a->at(cur, v);
    cover_from(st, factor * term, odd_cycles + (odd ? 1 : 0));
  }
  // extend
  for (int w = 0; w < st.s; ++w) {
    if (st.covered[w] || st.a->at(cur, w).is_zero()) continue;
    st.covered[w] = 1;
    path.push_back(w);
    grow_cycle(st, path, walked * st.a->at(cur, w), factor, odd_cycles);
    path.pop_back();
    st.covered[w] = 0;
  }
}

void cover_from(CoverState& st, const Rational& factor, int odd_cycles) {
  int v = -1;
  for (int i = 0; i < st.s; ++i) {
    if (!st.covered[i]) { v = i; break; }
  }
  if (v < 0) {
    HALFTREE_CHECK(odd_cycles % 2 == 0, "cycle cover with an odd number of odd cycles");
    st.total += factor;
    return;
  }
  st.covered[v] = 1;
  std::vector<int> path{v};
  grow_cycle(st, path, Rational(1), factor, odd_cycles);
  st.covered[v] = 0;
}

}  // namespace

Rational cycle_cover_expansion(const SkewMatrix& a) {
  HALFTREE_CHECK(a.size() % 2 == 0, "even matrix size required");
  HALFTREE_CHECK(validate(a, false).antisymmetric(), "expansion input must be skew-symmetric");
  CoverState st;
  st.a = &a;
  st.s = a.size();
  st.covered.assign(a.size(), 0);
  cover_from(st, Rational(1), 0);
  return st.total;
}

}  // namespace halftree
