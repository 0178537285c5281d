// Acceptance suite: one line per criterion, nonzero exit when any fails.
// All identity checks are exact rational equalities; each criterion also
// carries a wall-clock budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "halftree/forests.hpp"
#include "halftree/graph.hpp"
#include "halftree/hypergraph.hpp"
#include "halftree/line_bundle.hpp"
#include "halftree/opening.hpp"
#include "halftree/skew_matrix.hpp"
#include "support.hpp"

using namespace halftree;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

std::vector<InstanceSpec> standard_instances(std::size_t count) {
  std::vector<InstanceSpec> specs;
  std::uint64_t seed = 1000;
  while (specs.size() < count) {
    for (int n : {2, 4, 6}) {
      for (int r : {1, 2}) {
        if (specs.size() == count) break;
        InstanceSpec spec;
        spec.n = n;
        spec.r = r;
        spec.seed = ++seed;
        specs.push_back(spec);
      }
    }
  }
  return specs;
}

bool criterion1(std::string& detail) {
  int done = 0;
  for (std::uint64_t seed = 1; done < 200; ++seed) {
    const int size = 2 + static_cast<int>(seed % 7);  // sizes 2..8
    const SkewMatrix m = random_skew(size, seed * 101 + 7, 9);
    const Rational pf = pfaffian_by_pairings(m);
    if (!(pfaffian_by_elimination(m) == pf)) {
      detail = "pairing and elimination Pfaffians differ at size " + std::to_string(size);
      return false;
    }
    if (!(determinant(m) == pf * pf)) {
      detail = "determinant differs from the squared Pfaffian at size " + std::to_string(size);
      return false;
    }
    ++done;
  }
  detail = "200 matrices, sizes 2-8";
  return true;
}

bool criterion2(std::string& detail) {
  int references = 0;
  for (const auto& spec : standard_instances(50)) {
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    const Rational pf = pfaffian_by_pairings(principal_submatrix(m, spec.r));
    for (const auto& m0 : enumerate_perfect_matchings(g)) {
      if (!(pfaffian_via_matchings(g, m0) == pf)) {
        detail = "mismatch at seed " + std::to_string(spec.seed) + " m0 " + m0.str();
        return false;
      }
      ++references;
    }
  }
  detail = "50 instances, " + std::to_string(references) + " reference matchings";
  return true;
}

bool criterion3(std::string& detail) {
  int references = 0;
  for (const auto& spec : standard_instances(50)) {
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    const Rational pf = pfaffian_by_pairings(principal_submatrix(m, spec.r));
    for (const auto& m0 : enumerate_perfect_matchings(g)) {
      if (!(pfaffian_via_half_forests(g, m0) == pf)) {
        detail = "half-forest sum differs at seed " + std::to_string(spec.seed) + " m0 " +
                 m0.str();
        return false;
      }
      ++references;
    }
  }
  detail = "50 instances, " + std::to_string(references) +
           " reference matchings, all equal to the Pfaffian";
  return true;
}

bool criterion4(std::string& detail) {
  const SkewMatrix matrix = testsupport::canonical_instance();
  const RootedGraph g = graph_from_matrix(matrix);
  const auto m0 = testsupport::reference_14_23();

  const SpanningForest f1{4, 1, {0, 4, 3, 1, 5}};
  const SpanningForest f2{4, 1, {0, 4, 3, 5, 5}};
  const SpanningForest f3{4, 1, {0, 2, 3, 5, 1}};
  if (trim(f1).paths != std::vector<std::vector<Vertex>>{{2, 3, 1}, {1, 4, 5}}) {
    detail = "trim(F1) differs";
    return false;
  }
  if (trim(f3).paths != std::vector<std::vector<Vertex>>{{4, 1}, {1, 2, 3, 5}}) {
    detail = "trim(F3) differs";
    return false;
  }
  if (!satisfies_condition_C(f1, m0) || !satisfies_condition_C(f2, m0) ||
      satisfies_condition_C(f3, m0)) {
    detail = "condition C classification differs";
    return false;
  }

  auto keys = [&](const WeightedOutputSet& out) {
    std::set<std::string> k;
    for (const auto& item : out.items) {
      std::string s;
      for (const auto& p : item.config.opening_paths) {
        s += '(';
        for (Vertex v : p) s += std::to_string(v) + ",";
        s += ')';
      }
      k.insert(s);
    }
    return k;
  };
  const auto s1 = keys(open_step1(superimpose_and_orient(m0, m0), g));
  if (s1 != std::set<std::string>{"(1,4,5,)", "(1,4,2,3,1,)", "(1,4,2,3,5,)", "(1,4,3,2,1,)"}) {
    detail = "first-round output set differs";
    return false;
  }
  const auto complete = keys(run_complete(m0, m0, g));
  if (complete != std::set<std::string>{"(1,4,2,3,1,)", "(1,4,2,3,5,)", "(1,4,3,2,1,)",
                                        "(1,4,5,)(2,3,1,)", "(1,4,5,)(2,3,4,)",
                                        "(1,4,5,)(2,3,5,)"}) {
    detail = "complete-algorithm output set differs";
    return false;
  }

  int survivors = 0;
  for (const auto& f : enumerate_spanning_forests(g))
    if (is_compatible(f, m0) && satisfies_condition_C(f, m0)) ++survivors;
  if (survivors != 4) {
    detail = "expected 4 surviving half-trees, got " + std::to_string(survivors);
    return false;
  }
  detail = "trimming, first round, complete algorithm and survivors as in the worked example";
  return true;
}

bool criterion5(std::string& detail) {
  int runs = 0;
  for (const auto& spec : standard_instances(50)) {
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    const auto matchings = enumerate_perfect_matchings(g);
    for (const auto& m0 : matchings) {
      for (const auto& mm : matchings) {
        const auto s = superimpose_and_orient(m0, mm);
        const Rational w = matching_weight(s, g);
        if (!(open_step1(s, g).total_weight() == w)) {
          detail = "first round not weight preserving at seed " + std::to_string(spec.seed);
          return false;
        }
        if (!(run_complete(m0, mm, g).total_weight() == w)) {
          detail = "complete run not weight preserving at seed " + std::to_string(spec.seed);
          return false;
        }
        ++runs;
      }
    }
  }
  detail = std::to_string(runs) + " superimpositions, both stages weight preserving";
  return true;
}

bool criterion6(std::string& detail) {
  int instances = 0, checks = 0;
  std::uint64_t seed = 9000;
  while (instances < 20) {
    InstanceSpec spec;
    spec.n = instances % 2 == 0 ? 4 : 6;
    spec.r = 1 + instances % 2;
    spec.seed = ++seed;
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    for (const auto& m0 : enumerate_perfect_matchings(g)) {
      const CorrespondenceReport rep = verify_correspondence(g, m0);
      if (!rep.passed || !(rep.unicycle_residue == Rational(0))) {
        detail = "correspondence failed at seed " + std::to_string(spec.seed) + " m0 " +
                 m0.str() + (rep.problems.empty() ? "" : ": " + rep.problems.front());
        return false;
      }
      ++checks;
    }
    ++instances;
  }
  detail = "20 instances, " + std::to_string(checks) +
           " reference matchings, multiset + provenance + zero residue";
  return true;
}

bool criterion7(std::string& detail) {
  for (const auto& spec : standard_instances(50)) {
    const SkewMatrix m = random_instance(spec);
    const RootedGraph g = graph_from_matrix(m);
    // the expansion asserts the intrinsic family equals the disjoint union
    const Rational lhs = determinant_via_forests(g);
    if (!(lhs == determinant(principal_submatrix(m, spec.r)))) {
      detail = "forest determinant differs at seed " + std::to_string(spec.seed);
      return false;
    }
  }
  detail = "50 instances, both expansions equal the determinant";
  return true;
}

bool criterion8(std::string& detail) {
  int done = 0;
  std::uint64_t seed = 4000;
  while (done < 20) {
    InstanceSpec spec;
    spec.n = done % 2 == 0 ? 2 : 4;  // total sizes 4 and 6
    spec.r = 2;
    spec.seed = ++seed;
    const SkewMatrix m = random_instance(spec);
    const RootedGraph full(m.size(), 0, m.entries());
    const Connection psi = Connection::random(full, seed * 3 + 11, 7);
    if (!(det_via_crsf(m, psi) == determinant(twist(m, psi)))) {
      detail = "twisted determinant differs at seed " + std::to_string(spec.seed);
      return false;
    }
    if (!(det_via_crsf(m, Connection::ones(full)) == Rational(0))) {
      detail = "trivial connection does not vanish at seed " + std::to_string(spec.seed);
      return false;
    }
    ++done;
  }
  detail = "20 random connection pairs, plus the trivial-connection degenerate case";
  return true;
}

bool criterion9(std::string& detail) {
  if (enumerate_3graph_trees(5).size() != 15 || enumerate_3graph_trees(7).size() != 735) {
    detail = "tree counts differ";
    return false;
  }
  const MvReport mv3 = verify_mv_identity(3, 51);
  const MvReport mv5 = verify_mv_identity(5, 52);
  if (!mv3.passed || !mv5.passed || mv3.terms.size() != 1 || mv5.terms.size() != 15) {
    detail = "symbolic Pfaffian support differs";
    return false;
  }
  const PartitionReport part = compatible_matching_partition(5);
  if (!part.passed || part.classes.size() != 3) {
    detail = "partition differs";
    return false;
  }
  const auto m = testsupport::reference_14_23();
  bool found_class = false;
  int condition_failures = 0;
  for (const auto& cls : part.classes) {
    if (cls.trees.size() != 5) {
      detail = "class size differs";
      return false;
    }
    if (!(cls.matching == m)) continue;
    found_class = true;
    std::set<std::string> keys;
    for (const auto& t : cls.trees) {
      keys.insert(t.str());
      if (!satisfies_condition_C(halftree_from_3tree(t, m), m)) ++condition_failures;
    }
    if (keys != std::set<std::string>{"123 145", "124 235", "134 235", "145 234", "145 235"}) {
      detail = "class of 1-4 2-3 differs from the worked example";
      return false;
    }
  }
  if (!found_class || condition_failures < 1) {
    detail = "expected at least one appendix half-tree failing the trimming condition";
    return false;
  }
  detail = "counts 15/735, symbolic support with unit signs, partition and failure case";
  return true;
}

bool criterion10(std::string& detail) {
  const std::string bin = HALFTREE_CLI_BIN;
  const std::string fresh = "/tmp/halftree_acceptance_fresh.mat";
  const std::string broken = "/tmp/halftree_acceptance_broken.mat";

  InstanceSpec spec;
  spec.n = 4;
  spec.r = 2;
  spec.seed = 2024;
  const SkewMatrix m = random_instance(spec);
  write_matrix_file(fresh, m);
  SkewMatrix perturbed = m;
  perturbed.set_pair(1, 2, perturbed.at(1, 2) + Rational(1));
  write_matrix_file(broken, perturbed);

  const auto ok = testsupport::run_command(bin + " verify " + fresh + " --suite all");
  if (ok.exit_code != 0) {
    detail = "verify on the fresh instance exited " + std::to_string(ok.exit_code);
    return false;
  }
  const auto bad = testsupport::run_command(bin + " verify " + broken + " --suite all");
  if (bad.exit_code != 1) {
    detail = "verify on the perturbed instance exited " + std::to_string(bad.exit_code);
    return false;
  }
  if (bad.output.find("\"counterexample\"") == std::string::npos ||
      bad.output.find("\"row\"") == std::string::npos) {
    detail = "perturbed report carries no counterexample payload";
    return false;
  }
  detail = "exit 0 on the fresh instance, exit 1 with counterexample on the perturbed one";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Pfaffian oracles agree and det = Pf^2", 5.0, criterion1},
      {2, "matching expansion equals the Pfaffian for every reference", 30.0, criterion2},
      {3, "half-forest expansion equals the Pfaffian for every reference", 60.0, criterion3},
      {4, "running-example fidelity", 10.0, criterion4},
      {5, "both opening stages are weight preserving", 60.0, criterion5},
      {6, "output multiset, provenance and cancellation", 120.0, criterion6},
      {7, "determinant forest expansions", 60.0, criterion7},
      {8, "line-bundle determinant identity", 30.0, criterion8},
      {9, "3-graph appendix", 30.0, criterion9},
      {10, "CLI verify contract", 60.0, criterion10},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool passed = ok && in_budget;
    if (!passed) ++failures;
    std::printf("[%s] criterion %2d: %s — %s (%.2fs, budget %.0fs)\n",
                passed ? "PASS" : "FAIL", c.number, c.title.c_str(),
                detail.empty() ? "-" : detail.c_str(), seconds, c.budget_seconds);
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
