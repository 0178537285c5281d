#include <doctest.h>

#include <map>
#include <set>

#include "halftree/forests.hpp"
#include "halftree/graph.hpp"
#include "halftree/opening.hpp"
#include "halftree/rng.hpp"
#include "halftree/skew_matrix.hpp"
#include "support.hpp"

using namespace halftree;

TEST_SUITE_BEGIN("opening");

namespace {

std::set<std::string> path_keys(const WeightedOutputSet& out) {
  std::set<std::string> keys;
  for (const auto& item : out.items) {
    std::string k;
    for (const auto& p : item.config.opening_paths) {
      k += '(';
      for (Vertex v : p) k += std::to_string(v) + ",";
      k += ')';
    }
    keys.insert(k);
  }
  return keys;
}

Rcrsf rcrsf(int n, int r, std::vector<Vertex> out_from_1) {
  std::vector<Vertex> out(1, 0);
  out.insert(out.end(), out_from_1.begin(), out_from_1.end());
  return Rcrsf{n, r, std::move(out)};
}

}  // namespace

TEST_CASE("first opening round on the running example") {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();
  const auto s = superimpose_and_orient(m0, m0);

  const WeightedOutputSet out = open_step1(s, g);
  CHECK(out.items.size() == 4);
  CHECK(path_keys(out) == std::set<std::string>{"(1,4,5,)", "(1,4,2,3,1,)", "(1,4,2,3,5,)",
                                                "(1,4,3,2,1,)"});
  CHECK(out.total_weight() == matching_weight(s, g));

  // working copies of the four survivors
  std::map<std::string, std::set<std::pair<Vertex, Vertex>>> m_sides;
  for (const auto& item : out.items) {
    std::string k;
    for (const auto& p : item.config.opening_paths) {
      k += '(';
      for (Vertex v : p) k += std::to_string(v) + ",";
      k += ')';
    }
    m_sides[k] = {item.config.m_side.begin(), item.config.m_side.end()};
  }
  CHECK(m_sides["(1,4,5,)"] == std::set<std::pair<Vertex, Vertex>>{{4, 5}, {3, 2}});
  CHECK(m_sides["(1,4,2,3,1,)"] == std::set<std::pair<Vertex, Vertex>>{{4, 2}, {3, 1}});
  CHECK(m_sides["(1,4,2,3,5,)"] == std::set<std::pair<Vertex, Vertex>>{{4, 2}, {3, 5}});
  CHECK(m_sides["(1,4,3,2,1,)"] == std::set<std::pair<Vertex, Vertex>>{{4, 3}, {2, 1}});
}

TEST_CASE("a doubled-edge-free superimposition passes through unchanged") {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();
  const auto m = PerfectMatching::from_pairs(4, {{1, 2}, {3, 4}});
  const auto s = superimpose_and_orient(m0, m);
  REQUIRE(s.doubled.empty());

  const WeightedOutputSet out = open_step1(s, g);
  REQUIRE(out.items.size() == 1);
  CHECK(out.items[0].weight == matching_weight(s, g));
  CHECK(out.items[0].config.opening_paths.empty());

  const WeightedOutputSet complete = run_complete(m0, m, g);
  REQUIRE(complete.items.size() == 1);
  const Rcrsf f = rcrsf_from_config(complete.items[0].config, g.n(), g.r());
  CHECK(f.cycles_only());
  CHECK(f.cycles().size() == 1);
}

TEST_CASE("complete algorithm reproduces the six example configurations") {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();

  const WeightedOutputSet out = run_complete(m0, m0, g);
  CHECK(out.items.size() == 6);
  CHECK(path_keys(out) ==
        std::set<std::string>{"(1,4,2,3,1,)", "(1,4,2,3,5,)", "(1,4,3,2,1,)",
                              "(1,4,5,)(2,3,1,)", "(1,4,5,)(2,3,4,)", "(1,4,5,)(2,3,5,)"});
  CHECK(out.total_weight() ==
        matching_weight(superimpose_and_orient(m0, m0), g));
}

TEST_CASE("summing complete outputs over all matchings gives the pfaffian") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    InstanceSpec spec;
    spec.n = seed % 2 == 0 ? 6 : 4;
    spec.r = 1 + static_cast<int>(seed % 2);
    spec.seed = seed * 3 + 1;
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    const auto matchings = enumerate_perfect_matchings(g);
    const Rational pf = pfaffian_by_pairings(principal_submatrix(m, m.r()));
    for (const auto& m0 : matchings) {
      Rational total;
      for (const auto& mm : matchings) total += run_complete(m0, mm, g).total_weight();
      CHECK(total == pf);
    }
  }
}

TEST_CASE("partial reverse equals trimming on spanning forests") {
  const RootedGraph g = graph_from_matrix(testsupport::canonical_instance());
  for (const auto& f : enumerate_spanning_forests(g)) {
    const Rcrsf as_rcrsf{f.n, f.r, f.out};
    REQUIRE(as_rcrsf.cycles().empty());
    CHECK(partial_reverse(as_rcrsf).paths == trim(f).paths);
  }
}

TEST_CASE("partial reverse stops at the cycle") {
  // 4-cycle on 1..4 with the single branch 5 -> 6 -> 1 (root vertex 7 unused)
  const Rcrsf f = rcrsf(6, 1, {2, 3, 4, 1, 6, 1});
  const auto d = partial_reverse(f);
  CHECK(d.paths == std::vector<std::vector<Vertex>>{{5, 6, 1}});

  const Rcrsf cycles_only = rcrsf(4, 1, {2, 3, 4, 1});
  CHECK_THROWS_AS(partial_reverse(cycles_only), std::invalid_argument);
}

TEST_CASE("running-example tree reverses like it trims") {
  const Rcrsf f1 = rcrsf(4, 1, {4, 3, 1, 5});
  CHECK(partial_reverse(f1).paths == std::vector<std::vector<Vertex>>{{2, 3, 1}, {1, 4, 5}});
}

TEST_CASE("condition C for cycle-rooted configurations") {
  const auto m0 = testsupport::reference_14_23();
  // pure alternating 4-cycle
  const Rcrsf cycle = rcrsf(4, 1, {4, 1, 2, 3});
  REQUIRE(cycle.cycles_only());
  CHECK(rcrsf_compatible(cycle, m0));
  CHECK(rcrsf_condition_C(cycle, m0));

  // spanning forests agree with the forest-level predicate
  const RootedGraph g = graph_from_matrix(testsupport::canonical_instance());
  for (const auto& f : enumerate_spanning_forests(g)) {
    if (!is_compatible(f, m0)) continue;
    const Rcrsf as_rcrsf{f.n, f.r, f.out};
    CHECK(rcrsf_condition_C(as_rcrsf, m0) == satisfies_condition_C(f, m0));
  }
}

TEST_CASE("initial matchings recovered from a cycle-rooted forest") {
  const auto m0 = testsupport::reference_14_23();

  const Rcrsf forest_like = rcrsf(4, 1, {4, 3, 1, 5});
  const auto single = matchings_from_rcrsf(forest_like, m0);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == m0);

  const Rcrsf cycle = rcrsf(4, 1, {4, 1, 2, 3});
  const auto pair = matchings_from_rcrsf(cycle, m0);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0] == m0);
  CHECK(pair[1] == PerfectMatching::from_pairs(4, {{1, 2}, {3, 4}}));
}

TEST_CASE("recovered initial matchings are matchings of the graph") {
  InstanceSpec spec;
  spec.n = 6;
  spec.r = 1;
  spec.seed = 14;
  const SkewMatrix m = random_instance(spec);
  const RootedGraph g = graph_from_matrix(m);
  const auto m0 = enumerate_perfect_matchings(g).front();
  for (const auto& f : enumerate_rcrsf(g, m0)) {
    const auto recovered = matchings_from_rcrsf(f, m0);
    CHECK(recovered.size() == (std::size_t{1} << f.cycles().size()));
    for (const auto& mm : recovered) CHECK(mm.is_matching_of(g));
  }
}

TEST_CASE("enumerating compatible cycle-rooted forests") {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();
  const auto family = enumerate_rcrsf(g, m0);

  // contains the pure 4-cycle in both orientations
  std::set<std::string> keys;
  for (const auto& f : family) keys.insert(f.str());
  CHECK(keys.count("1>4 2>1 3>2 4>3") == 1);
  CHECK(keys.count("1>2 2>3 3>4 4>1") == 1);

  // every compatible spanning forest is in the family
  for (const auto& f : enumerate_spanning_forests(g)) {
    if (!is_compatible(f, m0)) continue;
    CHECK(keys.count(f.str()) == 1);
  }

  // every complete-algorithm output appears in the family
  for (const auto& m : enumerate_perfect_matchings(g)) {
    for (const auto& item : run_complete(m0, m, g).items) {
      const Rcrsf f = rcrsf_from_config(item.config, g.n(), g.r());
      CHECK(keys.count(f.str()) == 1);
    }
  }
}

TEST_CASE("cancellation pairs on the running example") {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();

  // the pure-cycle run with switched edges cancels the cycle built by the
  // opening from the doubled superimposition
  const auto m2 = PerfectMatching::from_pairs(4, {{1, 3}, {2, 4}});
  const auto m3 = PerfectMatching::from_pairs(4, {{1, 2}, {3, 4}});
  const auto from_m0 = run_complete(m0, m0, g);
  const auto from_m2 = run_complete(m0, m2, g);
  const auto from_m3 = run_complete(m0, m3, g);
  REQUIRE(from_m2.items.size() == 1);
  REQUIRE(from_m3.items.size() == 1);

  std::map<std::string, Rational> weight_by_key;
  for (const auto& item : from_m0.items)
    weight_by_key[item.config.key(g.n())] = item.weight;

  const std::string key2 = from_m2.items[0].config.key(g.n());
  const std::string key3 = from_m3.items[0].config.key(g.n());
  REQUIRE(weight_by_key.count(key2) == 1);
  REQUIRE(weight_by_key.count(key3) == 1);
  CHECK(weight_by_key[key2] + from_m2.items[0].weight == Rational(0));
  CHECK(weight_by_key[key3] + from_m3.items[0].weight == Rational(0));
}

TEST_CASE("correspondence on the running example") {
  const RootedGraph g = graph_from_matrix(testsupport::canonical_instance());
  const auto m0 = testsupport::reference_14_23();
  const CorrespondenceReport rep = verify_correspondence(g, m0);
  CHECK(rep.passed);
  CHECK(rep.problems.empty());
  CHECK(rep.forest_outputs == 4);
  CHECK(rep.unicycle_residue == Rational(0));
  CHECK(rep.forest_sum == pfaffian_via_half_forests(g, m0));
}

TEST_CASE("correspondence on random instances") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    InstanceSpec spec;
    spec.n = 4;
    spec.r = 1 + static_cast<int>(seed % 2);
    spec.seed = seed * 11 + 3;
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    for (const auto& m0 : enumerate_perfect_matchings(g)) {
      const CorrespondenceReport rep = verify_correspondence(g, m0);
      CHECK(rep.passed);
      if (!rep.passed)
        for (const auto& p : rep.problems) MESSAGE(p);
    }
  }
}

TEST_CASE("correspondence on sparse supports") {
  for (std::uint64_t seed : {3ull, 8ull}) {
    Rng support_rng(seed * 1337);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j)
        if (i == 5 || j == 5 || support_rng.chance(0.7)) edges.emplace_back(i, j);
    InstanceSpec spec;
    spec.n = 4;
    spec.r = 2;
    spec.seed = seed;
    spec.edges = edges;
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    for (const auto& m0 : enumerate_perfect_matchings(g)) {
      const CorrespondenceReport rep = verify_correspondence(g, m0);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("instances without even cycles only produce forests") {
  // support without any alternating 4-cycle for m0: a star-ish matching graph
  InstanceSpec spec;
  spec.n = 4;
  spec.r = 1;
  spec.seed = 2;
  spec.edges =
      std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {1, 3}};
  const SkewMatrix m = random_instance(spec);
  const RootedGraph g = graph_from_matrix(m);
  const auto m0 = testsupport::reference_14_23();
  REQUIRE(m0.is_matching_of(g));
  for (const auto& f : enumerate_rcrsf(g, m0)) CHECK(f.cycles().empty());
  const CorrespondenceReport rep = verify_correspondence(g, m0);
  CHECK(rep.passed);
  CHECK(rep.unicycle_residue == Rational(0));
}

TEST_SUITE_END();
