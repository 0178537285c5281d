#include "halftree/opening.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "functional_graph.hpp"
#include "halftree/check.hpp"
#include "halftree/permutation.hpp"

namespace halftree {

// ---------------------------------------------------------------------------
// Rcrsf

std::vector<std::vector<Vertex>> Rcrsf::cycles() const {
  return detail::functional_cycles(out, n);
}

bool Rcrsf::cycles_only() const {
  std::vector<char> on_cycle(n + 1, 0);
  for (const auto& c : cycles())
    for (Vertex v : c) on_cycle[v] = 1;
  for (Vertex v = 1; v <= n; ++v)
    if (!on_cycle[v]) return false;
  return true;
}

std::string Rcrsf::str() const {
  std::ostringstream os;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > 1) os << ' ';
    os << v << '>' << out[v];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// OpenConfig

std::vector<std::pair<Vertex, Vertex>> OpenConfig::directed_edges() const {
  auto all = m0_oriented;
  all.insert(all.end(), m_side.begin(), m_side.end());
  return all;
}

std::vector<Vertex> OpenConfig::out_map(int n) const {
  std::vector<Vertex> out(n + 1, 0);
  for (auto [x, y] : directed_edges()) {
    HALFTREE_CHECK(x >= 1 && x <= n, "out-edge leaves from a root vertex");
    HALFTREE_CHECK(out[x] == 0, "vertex has two outgoing edges");
    out[x] = y;
  }
  for (Vertex v = 1; v <= n; ++v)
    HALFTREE_CHECK(out[v] != 0, "vertex has no outgoing edge");
  return out;
}

std::string OpenConfig::key(int n) const {
  const auto out = out_map(n);
  std::ostringstream os;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > 1) os << ' ';
    os << v << '>' << out[v];
  }
  return os.str();
}

Rational WeightedOutputSet::total_weight() const {
  Rational total;
  for (const auto& item : items) total += item.weight;
  return total;
}

Rcrsf rcrsf_from_config(const OpenConfig& config, int n, int r) {
  HALFTREE_CHECK(config.finished(), "configuration still has doubled edges");
  return Rcrsf{n, r, config.out_map(n)};
}

// ---------------------------------------------------------------------------
// The opening procedure

namespace {

struct Ctx {
  const RootedGraph* g = nullptr;
  const PerfectMatching* m0 = nullptr;
  std::vector<char> on_initial_cycle;
};

/// Weight of a configuration: reference-description sign, one minus-sign per
/// unopened doubled edge and per cycle of the input superimposition, times
/// the product of the working-copy entries. The running sign is cross-checked
/// against a from-scratch recomputation.
Rational config_weight(const OpenConfig& c, const RootedGraph& g) {
  std::vector<int> description;
  for (auto [x, y] : c.m0_oriented) {
    description.push_back(x);
    description.push_back(y);
  }
  const int fresh = permutation_sign(description);
  HALFTREE_CHECK(fresh == c.sign, "incremental reference sign diverged");
  HALFTREE_CHECK(c.initial_doubled - c.opened == static_cast<int>(c.doubled.size()),
                 "opened-edge count out of sync");
  Rational w(fresh);
  if ((c.initial_doubled - c.opened + c.initial_cycles) % 2 != 0) w = -w;
  for (auto [x, y] : c.m_side) w *= g.weight(x, y);
  return w;
}

OpenConfig config_from_superimposition(const OrientedSuperimposition& s) {
  OpenConfig c;
  c.m0_oriented = s.oriented_m0;
  c.m_side = s.oriented_m;
  c.doubled = s.doubled;
  c.initial_doubled = static_cast<int>(s.doubled.size());
  c.initial_cycles = static_cast<int>(s.cycles.size());
  std::vector<int> description;
  for (auto [x, y] : s.oriented_m0) {
    description.push_back(x);
    description.push_back(y);
  }
  c.sign = permutation_sign(description);
  return c;
}

PerfectMatching matching_of_superimposition(const OrientedSuperimposition& s, int n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (auto [x, y] : s.oriented_m0) pairs.emplace_back(std::min(x, y), std::max(x, y));
  return PerfectMatching::from_pairs(n, pairs);
}

struct Emission {
  OpenConfig config;
  bool odd_loop = false;
  std::string cancel_key;
};

bool covered_by_doubled(const OpenConfig& c, Vertex v) {
  for (auto [i, j] : c.doubled)
    if (i == v || j == v) return true;
  return false;
}

void classify_and_emit(const Ctx& ctx, OpenConfig cfg, std::vector<Emission>& out) {
  const int n = ctx.g->n();
  const auto& path = cfg.opening_paths.back();
  HALFTREE_CHECK(path.size() % 2 == 1 && path.size() >= 3,
                 "opening path must have even length");
  const Vertex start = path.front();
  const Vertex last = path.back();

  std::vector<Vertex> body(path.begin(), path.end() - 1);
  {
    std::vector<Vertex> s = body;
    std::sort(s.begin(), s.end());
    HALFTREE_CHECK(std::adjacent_find(s.begin(), s.end()) == s.end(),
                   "walked vertices are not distinct");
    HALFTREE_CHECK(start == s.front(), "path does not start at its smallest walked vertex");
  }

  // the path alternates reference / working edges and both copies are present
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    const std::pair<Vertex, Vertex> e{path[t], path[t + 1]};
    const auto& side = (t % 2 == 0) ? cfg.m0_oriented : cfg.m_side;
    HALFTREE_CHECK(std::find(side.begin(), side.end(), e) != side.end(),
                   "emitted configuration misses a path edge");
  }
  (void)cfg.out_map(n);  // every vertex of V keeps exactly one out-edge

  Emission e;
  if (last > n) {
    // lands on a root; nothing more to check beyond the shared asserts
  } else if (ctx.on_initial_cycle[last]) {
    // lands on a cycle of the input superimposition
  } else {
    const auto pos = std::find(body.begin(), body.end(), last);
    if (pos != body.end()) {
      const std::size_t p = static_cast<std::size_t>(pos - body.begin());
      const std::size_t loop_len = path.size() - 1 - p;
      if (p % 2 == 0) {
        HALFTREE_CHECK(loop_len % 2 == 0 && loop_len >= 4, "kept loop must be even of length >= 4");
      } else {
        HALFTREE_CHECK(loop_len % 2 == 1 && loop_len >= 3, "odd loop of unexpected shape");
        e.odd_loop = true;
        // the reverse traversal of the same loop carries the opposite weight;
        // key the loop by its entry-pinned vertex sequence up to reversal
        std::vector<Vertex> loop(body.begin() + p, body.end());
        std::vector<Vertex> reversed{loop.front()};
        reversed.insert(reversed.end(), loop.rbegin(), loop.rend() - 1);
        if (reversed < loop) loop.swap(reversed);
        std::ostringstream key;
        for (std::size_t t = 0; t <= p; ++t) key << path[t] << ',';
        key << '|';
        for (Vertex v : loop) key << v << ',';
        e.cancel_key = key.str();
      }
    } else {
      // attaches to a previously built path
      bool found = false;
      for (std::size_t pi = 0; pi + 1 < cfg.opening_paths.size() && !found; ++pi) {
        const auto& earlier = cfg.opening_paths[pi];
        if (std::find(earlier.begin(), earlier.end(), last) == earlier.end()) continue;
        found = true;
        if (last == earlier.front())
          HALFTREE_CHECK(start > earlier.front(), "attached to a later starting vertex");
      }
      HALFTREE_CHECK(found, "endpoint classification is not exhaustive");
    }
  }
  e.config = std::move(cfg);
  out.push_back(std::move(e));
}

void descend(const Ctx& ctx, OpenConfig cfg, Vertex entry, std::vector<Emission>& out) {
  const RootedGraph& g = *ctx.g;
  const Vertex partner = ctx.m0->partner(entry);
  const Vertex lo = std::min(entry, partner);
  const Vertex hi = std::max(entry, partner);

  const auto dit = std::find(cfg.doubled.begin(), cfg.doubled.end(), std::make_pair(lo, hi));
  HALFTREE_CHECK(dit != cfg.doubled.end(), "entry vertex is not on a doubled edge");
  const auto m0it =
      std::find(cfg.m0_oriented.begin(), cfg.m0_oriented.end(), std::make_pair(lo, hi));
  HALFTREE_CHECK(m0it != cfg.m0_oriented.end(), "doubled edge lost its reference copy");
  const auto mit = std::find(cfg.m_side.begin(), cfg.m_side.end(), std::make_pair(hi, lo));
  HALFTREE_CHECK(mit != cfg.m_side.end(), "doubled edge lost its working copy");

  if (entry > partner) {
    // Reorient the doubled edge so the opening leaves from the partner. The
    // reference sign and the working-copy entry negate together, so the
    // configuration weight is unchanged.
    const Rational untouched = config_weight(cfg, g);
    *m0it = {entry, partner};
    *mit = {partner, entry};
    cfg.sign = -cfg.sign;
    HALFTREE_CHECK(config_weight(cfg, g) == untouched, "reorientation changed the weight");
  }
  const Rational before = config_weight(cfg, g);
  const std::size_t slot = static_cast<std::size_t>(mit - cfg.m_side.begin());

  cfg.doubled.erase(dit);
  cfg.opened += 1;

  auto& path = cfg.opening_paths.back();
  if (path.empty()) path.push_back(entry);
  HALFTREE_CHECK(path.back() == entry, "opening path out of step");
  path.push_back(partner);

  // zero row sums: the working copy (partner -> entry) rewrites as minus the
  // sum over the partner's other neighbours
  Rational children_total;
  for (Vertex next : g.neighbors(partner)) {
    if (next == entry) continue;
    OpenConfig child = cfg;
    child.m_side[slot] = {partner, next};
    child.opening_paths.back().push_back(next);
    children_total += config_weight(child, g);
    if (covered_by_doubled(child, next))
      descend(ctx, std::move(child), next, out);
    else
      classify_and_emit(ctx, std::move(child), out);
  }
  HALFTREE_CHECK(children_total == before, "opening does not conserve weight");
}

Vertex smallest_doubled_vertex(const OpenConfig& c) {
  HALFTREE_CHECK(!c.doubled.empty(), "no doubled edge left");
  return c.doubled.front().first;
}

/// The start of a finished step must be the maximum of the largest leaf and
/// the largest smallest-vertex over bare cycles built by the opening.
void assert_start_characterization(const Ctx& ctx, const OpenConfig& cfg, Vertex start) {
  const int n = ctx.g->n();
  const auto out = cfg.out_map(n);
  std::vector<int> indeg(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v)
    if (out[v] <= n) ++indeg[out[v]];
  Vertex largest_leaf = 0;
  for (Vertex v = 1; v <= n; ++v)
    if (indeg[v] == 0) largest_leaf = v;
  Vertex largest_cycle_min = 0;
  for (const auto& cycle : detail::functional_cycles(out, n)) {
    if (cycle.size() < 3) continue;                    // unopened doubled edge
    if (ctx.on_initial_cycle[cycle.front()]) continue; // input cycle
    bool bare = true;
    for (Vertex v : cycle)
      if (indeg[v] != 1) bare = false;
    if (bare) largest_cycle_min = std::max(largest_cycle_min, cycle.front());
  }
  HALFTREE_CHECK(std::max(largest_leaf, largest_cycle_min) == start,
                 "step start differs from the leaf/cycle characterization");
}

std::vector<OpenConfig> run_one_step(const Ctx& ctx, const OpenConfig& start_cfg) {
  OpenConfig cfg = start_cfg;
  const Vertex start = smallest_doubled_vertex(cfg);
  cfg.opening_paths.emplace_back();
  std::vector<Emission> emissions;
  descend(ctx, std::move(cfg), start, emissions);

  // Odd loops are walked in both directions and their weights cancel by
  // skew-symmetry; remove them in pairs.
  std::map<std::string, std::vector<std::size_t>> loops;
  for (std::size_t i = 0; i < emissions.size(); ++i)
    if (emissions[i].odd_loop) loops[emissions[i].cancel_key].push_back(i);
  std::set<std::size_t> dropped;
  for (const auto& [key, members] : loops) {
    HALFTREE_CHECK(members.size() == 2, "odd loop does not pair up: " + key);
    const Rational w0 = config_weight(emissions[members[0]].config, *ctx.g);
    const Rational w1 = config_weight(emissions[members[1]].config, *ctx.g);
    HALFTREE_CHECK(w0 + w1 == Rational(0), "odd-loop pair weights do not cancel");
    dropped.insert(members[0]);
    dropped.insert(members[1]);
  }

  std::vector<OpenConfig> kept;
  for (std::size_t i = 0; i < emissions.size(); ++i) {
    if (dropped.count(i)) continue;
    assert_start_characterization(ctx, emissions[i].config, start);
    kept.push_back(std::move(emissions[i].config));
  }
  return kept;
}

Ctx make_ctx(const RootedGraph& g, const PerfectMatching& m0,
             const OrientedSuperimposition& s) {
  Ctx ctx;
  ctx.g = &g;
  ctx.m0 = &m0;
  ctx.on_initial_cycle.assign(g.n() + 1, 0);
  for (const auto& cycle : s.cycles)
    for (Vertex v : cycle) ctx.on_initial_cycle[v] = 1;
  return ctx;
}

}  // namespace

WeightedOutputSet open_step1(const OrientedSuperimposition& s, const RootedGraph& g) {
  const PerfectMatching m0 = matching_of_superimposition(s, g.n());
  const Ctx ctx = make_ctx(g, m0, s);
  const OpenConfig root = config_from_superimposition(s);
  const Rational input_weight = matching_weight(s, g);
  HALFTREE_CHECK(config_weight(root, g) == input_weight,
                 "configuration weight disagrees with the matching weight");
  WeightedOutputSet result;
  if (root.finished()) {
    result.items.push_back({root, input_weight});
    return result;
  }
  for (auto& cfg : run_one_step(ctx, root)) {
    Rational w = config_weight(cfg, g);
    result.items.push_back({std::move(cfg), std::move(w)});
  }
  HALFTREE_CHECK(result.total_weight() == input_weight,
                 "first opening round is not weight preserving");
  return result;
}

WeightedOutputSet run_complete(const PerfectMatching& m0, const PerfectMatching& m,
                               const RootedGraph& g) {
  HALFTREE_CHECK(m0.is_matching_of(g) && m.is_matching_of(g),
                 "inputs are not matchings of the graph");
  const OrientedSuperimposition s = superimpose_and_orient(m0, m);
  const Ctx ctx = make_ctx(g, m0, s);
  const OpenConfig root = config_from_superimposition(s);
  const Rational input_weight = matching_weight(s, g);

  std::vector<OpenConfig> finished;
  if (root.finished()) {
    finished.push_back(root);
  } else {
    std::vector<OpenConfig> frontier{root};
    while (!frontier.empty()) {
      std::vector<OpenConfig> next;
      for (const auto& cfg : frontier) {
        for (auto& child : run_one_step(ctx, cfg)) {
          if (child.finished())
            finished.push_back(std::move(child));
          else
            next.push_back(std::move(child));
        }
      }
      frontier = std::move(next);
    }
  }

  WeightedOutputSet result;
  for (auto& cfg : finished) {
    HALFTREE_CHECK(cfg.initial_doubled - cfg.opened == 0,
                   "finished output keeps a doubled-edge weight factor");
    Rational w = config_weight(cfg, g);
    const Rcrsf f = rcrsf_from_config(cfg, g.n(), g.r());
    HALFTREE_CHECK(rcrsf_compatible(f, m0), "output is not an RCRSF compatible with the reference");
    result.items.push_back({std::move(cfg), std::move(w)});
  }
  HALFTREE_CHECK(result.total_weight() == input_weight,
                 "complete opening is not weight preserving");
  return result;
}

// ---------------------------------------------------------------------------
// Reverse algorithms and the correspondence

namespace {

PathDecomposition strip_rcrsf(const Rcrsf& f, const PerfectMatching* m0) {
  const auto cycles = f.cycles();
  if (f.cycles_only()) throw std::invalid_argument("input consists of cycles only");
  detail::DecomposeInput in;
  in.out = &f.out;
  in.n = f.n;
  in.m0 = m0;
  in.on_cycle.assign(f.n + 1, 0);
  for (const auto& c : cycles)
    for (Vertex v : c) in.on_cycle[v] = 1;
  auto res = detail::strip_paths(in);
  return PathDecomposition{std::move(res.paths), std::move(res.starts_with_m0)};
}

}  // namespace

PathDecomposition partial_reverse(const Rcrsf& f) { return strip_rcrsf(f, nullptr); }

PathDecomposition partial_reverse(const Rcrsf& f, const PerfectMatching& m0) {
  if (!rcrsf_compatible(f, m0))
    throw std::invalid_argument("configuration is not compatible with the reference");
  return strip_rcrsf(f, &m0);
}

bool rcrsf_compatible(const Rcrsf& f, const PerfectMatching& m0) {
  for (auto [i, j] : m0.pairs()) {
    if (!f.contains_edge(i, j)) return false;
    if (f.out[i] == j && f.out[j] == i) return false;  // doubled edge
  }
  for (const auto& cycle : f.cycles()) {
    if (cycle.size() % 2 != 0 || cycle.size() < 4) return false;
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      const bool in_m0 = m0.contains(cycle[t], cycle[(t + 1) % cycle.size()]);
      const bool next_in_m0 =
          m0.contains(cycle[(t + 1) % cycle.size()], cycle[(t + 2) % cycle.size()]);
      if (in_m0 == next_in_m0) return false;  // not alternating
    }
  }
  return true;
}

bool rcrsf_condition_C(const Rcrsf& f, const PerfectMatching& m0) {
  if (!rcrsf_compatible(f, m0))
    throw std::invalid_argument("configuration is not compatible with the reference");
  if (f.cycles_only()) return true;
  const PathDecomposition d = strip_rcrsf(f, &m0);
  for (std::size_t i = 0; i < d.paths.size(); ++i) {
    if ((d.paths[i].size() - 1) % 2 != 0) return false;
    if (!d.starts_with_m0[i]) return false;
  }
  return true;
}

std::vector<PerfectMatching> matchings_from_rcrsf(const Rcrsf& f, const PerfectMatching& m0) {
  if (!rcrsf_compatible(f, m0))
    throw std::invalid_argument("configuration is not compatible with the reference");
  const auto cycles = f.cycles();
  const int k = static_cast<int>(cycles.size());
  std::vector<PerfectMatching> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::set<std::pair<Vertex, Vertex>> pairs;
    for (auto [i, j] : m0.pairs()) pairs.insert({i, j});
    for (int j = 0; j < k; ++j) {
      if (!((mask >> j) & 1u)) continue;
      const auto& cycle = cycles[j];
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        const Vertex a = cycle[t];
        const Vertex b = cycle[(t + 1) % cycle.size()];
        const std::pair<Vertex, Vertex> e{std::min(a, b), std::max(a, b)};
        if (m0.contains(a, b))
          pairs.erase(e);
        else
          pairs.insert(e);
      }
    }
    out.push_back(PerfectMatching::from_pairs(
        f.n, std::vector<std::pair<Vertex, Vertex>>(pairs.begin(), pairs.end())));
  }
  return out;
}

namespace {

void rcrsf_rec(const RootedGraph& g, const PerfectMatching& m0, std::vector<Vertex>& out,
               Vertex v, std::vector<Rcrsf>& acc) {
  const int n = g.n();
  if (v > n) {
    Rcrsf f{n, g.r(), out};
    for (const auto& cycle : f.cycles()) {
      if (cycle.size() % 2 != 0 || cycle.size() < 4) return;
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        const bool a = m0.contains(cycle[t], cycle[(t + 1) % cycle.size()]);
        const bool b = m0.contains(cycle[(t + 1) % cycle.size()],
                                   cycle[(t + 2) % cycle.size()]);
        if (a == b) return;
      }
    }
    acc.push_back(std::move(f));
    return;
  }
  const Vertex partner = m0.partner(v);
  for (Vertex w : g.neighbors(v)) {
    if (w <= n && w < v && out[w] == v) continue;  // doubled edge
    if (partner < v && out[partner] != v && w != partner) continue;  // missing reference edge
    out[v] = w;
    rcrsf_rec(g, m0, out, v + 1, acc);
    out[v] = 0;
  }
}

}  // namespace

std::vector<Rcrsf> enumerate_rcrsf(const RootedGraph& g, const PerfectMatching& m0) {
  HALFTREE_CHECK(m0.is_matching_of(g), "reference is not a matching of the graph");
  std::vector<Rcrsf> acc;
  std::vector<Vertex> out(g.n() + 1, 0);
  rcrsf_rec(g, m0, out, 1, acc);
  return acc;
}

namespace {

/// Branch part plus cycles with orientation erased; two configurations agree
/// on this key exactly when they differ only in cycle directions.
std::string structure_key(const Rcrsf& f) {
  const auto cycles = f.cycles();
  std::vector<char> on_cycle(f.n + 1, 0);
  for (const auto& c : cycles)
    for (Vertex v : c) on_cycle[v] = 1;
  std::ostringstream os;
  for (Vertex v = 1; v <= f.n; ++v)
    if (!on_cycle[v]) os << v << '>' << f.out[v] << ' ';
  os << '|';
  for (const auto& c : cycles) {
    std::vector<Vertex> canon = c;
    if (canon.size() > 2 && canon[1] > canon.back())
      std::reverse(canon.begin() + 1, canon.end());
    os << ' ';
    for (Vertex v : canon) os << v << ',';
  }
  return os.str();
}

struct ReverseOutcome {
  std::vector<Vertex> out;                   // oriented configuration
  std::vector<std::vector<Vertex>> paths;    // recovery order (last step first)
};

/// Recovers the opening paths of the run whose initial matching switches the
/// masked cycles, and fixes every cycle orientation the way the opening
/// builds it: switched cycles keep the superimposition orientation (smallest
/// vertex toward its reference partner); unswitched cycles leave their entry
/// vertex along its reference edge.
ReverseOutcome complete_reverse(const Rcrsf& f, unsigned mask, const PerfectMatching& m0) {
  const int n = f.n;
  const auto cycles = f.cycles();
  const int k = static_cast<int>(cycles.size());

  std::vector<int> cycle_id(n + 1, -1);
  std::vector<std::array<Vertex, 2>> cycle_nbrs(n + 1, {0, 0});
  for (int j = 0; j < k; ++j) {
    const auto& c = cycles[j];
    const std::size_t len = c.size();
    for (std::size_t t = 0; t < len; ++t) {
      cycle_id[c[t]] = j;
      cycle_nbrs[c[t]] = {c[(t + len - 1) % len], c[(t + 1) % len]};
    }
  }

  std::vector<Vertex> out(n + 1, 0);
  std::vector<char> branch_alive(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (cycle_id[v] < 0) {
      out[v] = f.out[v];
      branch_alive[v] = 1;
    }
  }

  // Walks the undirected cycle from v0 toward v1, fixing out-edges; returns
  // the closed vertex sequence v0 ... v0.
  auto orient_cycle = [&](Vertex v0, Vertex v1) {
    std::vector<Vertex> seq{v0};
    Vertex prev = v0, cur = v1;
    out[v0] = v1;
    while (cur != v0) {
      seq.push_back(cur);
      const Vertex nxt = cycle_nbrs[cur][0] == prev ? cycle_nbrs[cur][1] : cycle_nbrs[cur][0];
      out[cur] = nxt;
      prev = cur;
      cur = nxt;
    }
    seq.push_back(v0);
    return seq;
  };

  std::vector<char> cycle_alive(std::max(k, 1), 0);
  for (int j = 0; j < k; ++j) cycle_alive[j] = 1;
  for (int j = 0; j < k; ++j) {
    if ((mask >> j) & 1u) {
      const Vertex v0 = cycles[j][0];
      const Vertex v1 = m0.partner(v0);
      HALFTREE_CHECK(cycle_nbrs[v0][0] == v1 || cycle_nbrs[v0][1] == v1,
                     "reference partner is not on the cycle");
      orient_cycle(v0, v1);
    }
  }

  auto indegrees = [&] {
    std::vector<int> indeg(n + 1, 0);
    for (Vertex v = 1; v <= n; ++v)
      if (branch_alive[v] && f.out[v] <= n) ++indeg[f.out[v]];
    return indeg;
  };

  std::vector<std::vector<Vertex>> paths;
  while (true) {
    const auto indeg = indegrees();
    Vertex best_cycle_min = 0;
    int best_cycle = -1;
    for (int j = 0; j < k; ++j) {
      if (!cycle_alive[j] || ((mask >> j) & 1u)) continue;
      bool bare = true;
      for (Vertex v : cycles[j])
        if (indeg[v] != 0) bare = false;
      if (bare && cycles[j][0] > best_cycle_min) {
        best_cycle_min = cycles[j][0];
        best_cycle = j;
      }
    }
    Vertex leaf = 0;
    for (Vertex v = 1; v <= n; ++v)
      if (branch_alive[v] && indeg[v] == 0) leaf = v;

    if (best_cycle_min == 0 && leaf == 0) break;

    if (best_cycle_min > leaf) {
      const int j = best_cycle;
      const Vertex v0 = cycles[j][0];
      const Vertex v1 = m0.partner(v0);
      paths.push_back(orient_cycle(v0, v1));
      cycle_alive[j] = 0;
      continue;
    }

    std::vector<Vertex> path{leaf};
    Vertex cur = leaf;
    int stop_cycle = -1;
    while (true) {
      HALFTREE_CHECK(branch_alive[cur], "reverse walk reached a removed edge");
      const Vertex nxt = f.out[cur];
      path.push_back(nxt);
      branch_alive[cur] = 0;
      if (nxt > n) break;
      if (cycle_id[nxt] >= 0 && cycle_alive[cycle_id[nxt]]) {
        stop_cycle = cycle_id[nxt];
        break;
      }
      if (indeg[nxt] >= 2) break;
      if (nxt < leaf) break;
      cur = nxt;
    }

    // A lone branch smaller than the whole cycle it feeds is recovered
    // together with that cycle, entering along the reference edge.
    if (stop_cycle >= 0 && !((mask >> stop_cycle) & 1u) && leaf < cycles[stop_cycle][0]) {
      bool bare_after = true;
      const auto indeg_now = indegrees();
      for (Vertex v : cycles[stop_cycle])
        if (indeg_now[v] != 0) bare_after = false;
      if (bare_after) {
        const Vertex z = path.back();
        const auto cycle_seq = orient_cycle(z, m0.partner(z));
        path.insert(path.end(), cycle_seq.begin() + 1, cycle_seq.end());
        cycle_alive[stop_cycle] = 0;
      }
    }
    paths.push_back(std::move(path));
  }

  for (Vertex v = 1; v <= n; ++v) HALFTREE_CHECK(!branch_alive[v], "reverse left branch edges");
  for (int j = 0; j < k; ++j)
    HALFTREE_CHECK(cycle_alive[j] == (((mask >> j) & 1u) != 0),
                   "reverse consumed the wrong cycles");
  for (Vertex v = 1; v <= n; ++v) HALFTREE_CHECK(out[v] != 0, "reverse left a vertex unoriented");
  return ReverseOutcome{std::move(out), std::move(paths)};
}

std::string serialize_out(const std::vector<Vertex>& out, int n) {
  std::ostringstream os;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > 1) os << ' ';
    os << v << '>' << out[v];
  }
  return os.str();
}

}  // namespace

std::string CorrespondenceReport::str() const {
  std::ostringstream os;
  os << (passed ? "passed" : "FAILED") << ": " << structures << " condition-C structures, "
     << forest_outputs << " forest outputs, forest sum " << forest_sum.str()
     << ", unicycle residue " << unicycle_residue.str();
  for (const auto& p : problems) os << "\n  - " << p;
  return os.str();
}

CorrespondenceReport verify_correspondence(const RootedGraph& g, const PerfectMatching& m0) {
  CorrespondenceReport rep;
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.problems.push_back(std::move(msg));
  };

  struct Produced {
    Rational weight;
    std::vector<std::vector<Vertex>> paths;
    std::string structure;
    bool has_cycles = false;
  };
  std::map<std::pair<std::string, std::string>, std::vector<Produced>> actual;
  std::map<std::string, Rational> per_structure_sum;

  for (const PerfectMatching& m : enumerate_perfect_matchings(g)) {
    const WeightedOutputSet outputs = run_complete(m0, m, g);
    for (const auto& item : outputs.items) {
      const Rcrsf f = rcrsf_from_config(item.config, g.n(), g.r());
      Produced p{item.weight, item.config.opening_paths, structure_key(f), !f.cycles().empty()};
      per_structure_sum[p.structure] += item.weight;
      if (p.has_cycles)
        rep.unicycle_residue += item.weight;
      else {
        rep.forest_outputs += 1;
        rep.forest_sum += item.weight;
      }
      actual[{f.str(), m.str()}].push_back(std::move(p));
    }
  }

  std::map<std::string, std::vector<Rcrsf>> groups;
  for (auto& f : enumerate_rcrsf(g, m0)) groups[structure_key(f)].push_back(std::move(f));

  for (const auto& [skey, members] : groups) {
    const Rcrsf& rep_member = members.front();
    const auto cycles = rep_member.cycles();
    const int k = static_cast<int>(cycles.size());
    if (members.size() != (1u << k))
      fail("orientation group of unexpected size at " + skey);
    const bool condition_c = rcrsf_condition_C(rep_member, m0);
    for (const auto& f : members)
      if (rcrsf_condition_C(f, m0) != condition_c)
        fail("condition C depends on cycle orientation at " + skey);

    if (!condition_c) {
      for (const auto& f : members) {
        for (const auto& [key, items] : actual) {
          if (key.first == f.str() && !items.empty())
            fail("output realizes a structure failing condition C: " + f.str());
        }
      }
      continue;
    }

    rep.structures += 1;
    const auto initial_matchings = matchings_from_rcrsf(rep_member, m0);
    Rational invariant_part;  // sign times non-reference product; same for all masks
    bool invariant_set = false;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      const ReverseOutcome reverse = complete_reverse(rep_member, mask, m0);
      const PerfectMatching& m_eps = initial_matchings[mask];

      Rational base(reference_description_sign(reverse.out, g.n(), m0));
      for (Vertex v = 1; v <= g.n(); ++v)
        if (!m0.contains(v, reverse.out[v])) base *= g.weight(v, reverse.out[v]);
      if (!invariant_set) {
        invariant_part = base;
        invariant_set = true;
      } else if (base != invariant_part) {
        fail("sign times product depends on the cycle switch at " + skey);
      }
      Rational expected = base;
      if (std::popcount(mask) % 2 != 0) expected = -expected;

      std::vector<std::vector<Vertex>> expected_paths(reverse.paths.rbegin(),
                                                      reverse.paths.rend());
      const auto key = std::make_pair(serialize_out(reverse.out, g.n()), m_eps.str());
      auto it = actual.find(key);
      if (it == actual.end() || it->second.empty()) {
        fail("missing output " + key.first + " from matching " + key.second);
        continue;
      }
      bool matched = false;
      for (auto pit = it->second.begin(); pit != it->second.end(); ++pit) {
        if (pit->weight == expected && pit->paths == expected_paths) {
          it->second.erase(pit);
          matched = true;
          break;
        }
      }
      if (!matched)
        fail("output " + key.first + " from matching " + key.second +
             " disagrees in weight or provenance");
    }
    if (k >= 1) {
      auto sit = per_structure_sum.find(skey);
      if (sit != per_structure_sum.end() && !(sit->second == Rational(0)))
        fail("unicycle structure has nonzero total weight: " + skey);
    }
  }

  for (const auto& [key, items] : actual) {
    if (!items.empty())
      fail("unexpected output " + key.first + " from matching " + key.second);
  }

  if (!(rep.unicycle_residue == Rational(0))) fail("global unicycle residue is nonzero");
  if (!(rep.forest_sum == pfaffian_via_half_forests(g, m0)))
    fail("surviving forest sum differs from the half-forest expansion");
  return rep;
}

}  // namespace halftree
