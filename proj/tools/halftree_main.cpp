// Command-line front end: instance generation, identity-verification suites,
// and enumeration dumps. Exit codes: 0 success, 1 identity failure, 2
// malformed input or bad parameters.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "halftree/check.hpp"
#include "halftree/forests.hpp"
#include "halftree/graph.hpp"
#include "halftree/hypergraph.hpp"
#include "halftree/line_bundle.hpp"
#include "halftree/opening.hpp"
#include "halftree/rng.hpp"
#include "halftree/skew_matrix.hpp"
#include "halftree/verify.hpp"

namespace {

using namespace halftree;

constexpr int kIdentityFailure = 1;
constexpr int kMalformed = 2;

struct InputOptions {
  std::string path;
  bool random = false;
  int n = 4;
  int r = 1;
  std::uint64_t seed = 0;
  double density = 1.0;
  int value_range = 10;
  std::string edges;
};

std::vector<std::pair<int, int>> parse_pair_list(const std::string& text) {
  std::vector<std::pair<int, int>> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw halftree::ParseError("expected 'a-b' in '" + item + "'");
    pairs.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
  }
  if (pairs.empty()) throw halftree::ParseError("empty pair list");
  return pairs;
}

/// Density subsampling keeps every pair touching the balancer vertex n+1 so
/// zero column sums stay realizable.
std::vector<std::pair<int, int>> sample_edges(int n, int r, double density,
                                              std::uint64_t seed) {
  Rng rng(seed ^ 0xd1ce5eedull);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n + r; ++i) {
    for (int j = i + 1; j <= n + r; ++j) {
      if (i == n + 1 || j == n + 1 || rng.chance(density)) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

InstanceSpec spec_from(const InputOptions& in) {
  InstanceSpec spec;
  spec.n = in.n;
  spec.r = in.r;
  spec.seed = in.seed;
  spec.value_range = in.value_range;
  if (!in.edges.empty())
    spec.edges = parse_pair_list(in.edges);
  else if (in.density < 1.0)
    spec.edges = sample_edges(in.n, in.r, in.density, in.seed);
  return spec;
}

std::string descriptor(const InputOptions& in) {
  std::ostringstream os;
  os << "n=" << in.n << " r=" << in.r << " seed=" << in.seed
     << " value-range=" << in.value_range;
  if (!in.edges.empty())
    os << " edges=" << in.edges;
  else if (in.density < 1.0)
    os << " density=" << in.density;
  return os.str();
}

/// Loads the instance (file or generated); exits with kMalformed on any
/// problem. When `for_verify` is set, also demands even n >= 2, r >= 1 and
/// antisymmetry.
SkewMatrix load_instance(const InputOptions& in, InstanceInfo* info, bool for_verify) {
  try {
    SkewMatrix m = [&] {
      if (!in.path.empty()) {
        if (info) info->path = in.path;
        return read_matrix_file(in.path);
      }
      if (info) {
        info->seed = in.seed;
        if (!in.edges.empty()) info->edges = in.edges;
      }
      return random_instance(spec_from(in));
    }();
    if (info) {
      info->n = m.n();
      info->r = m.r();
      info->value_range = in.value_range;
    }
    if (for_verify) {
      if (m.n() < 2 || m.n() % 2 != 0 || m.r() < 1)
        throw halftree::ParseError("verification needs even n >= 2 and r >= 1");
      const SkewValidation v = validate(m, false);
      if (!v.antisymmetric())
        throw halftree::ParseError("matrix is not skew-symmetric: " + v.summary());
    }
    return m;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kMalformed);
  }
}

int run_generate(const InputOptions& in, const std::string& out_path) {
  try {
    const SkewMatrix m = random_instance(spec_from(in));
    if (out_path.empty()) {
      write_matrix(std::cout, m);
      std::cerr << descriptor(in) << "\n";
    } else {
      write_matrix_file(out_path, m);
      std::cout << descriptor(in) << " -> " << out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
}

int run_verify(const InputOptions& in, const std::string& suite, const std::string& m0_text) {
  InstanceInfo info;
  const SkewMatrix m = load_instance(in, &info, true);
  std::optional<PerfectMatching> pinned;
  if (!m0_text.empty()) {
    try {
      pinned = PerfectMatching::from_pairs(m.n(), parse_pair_list(m0_text));
      if (!pinned->is_matching_of(graph_from_matrix(m)))
        throw halftree::ParseError("--m0 is not a perfect matching of the graph");
    } catch (const std::exception& e) {
      std::cerr << "error: invalid --m0: " << e.what() << "\n";
      return kMalformed;
    }
  }
  const VerificationReport report = run_suite(m, info, suite, in.seed, pinned);
  std::cout << report_to_json(report) << "\n";
  return report.passed() ? 0 : kIdentityFailure;
}

PerfectMatching require_m0(const std::string& text, const RootedGraph& g) {
  if (text.empty()) {
    std::cerr << "error: --m0 is required for this kind\n";
    std::exit(kMalformed);
  }
  try {
    const PerfectMatching m0 = PerfectMatching::from_pairs(g.n(), parse_pair_list(text));
    if (!m0.is_matching_of(g)) throw halftree::ParseError("--m0 is not a perfect matching of the graph");
    return m0;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid --m0: " << e.what() << "\n";
    std::exit(kMalformed);
  }
}

int run_enumerate(const InputOptions& in, const std::string& kind, const std::string& m0_text,
                  int v_count) {
  using json = nlohmann::ordered_json;
  if (kind == "3trees") {
    if (v_count < 3 || v_count % 2 == 0) {
      std::cerr << "error: --v must be odd and >= 3\n";
      return kMalformed;
    }
    for (const auto& t : enumerate_3graph_trees(v_count)) {
      json line;
      line["hyperedges"] = t.str();
      std::cout << line.dump() << "\n";
    }
    return 0;
  }

  const SkewMatrix m = load_instance(in, nullptr, true);
  const RootedGraph g = graph_from_matrix(m);

  if (kind == "matchings") {
    for (const auto& pm : enumerate_perfect_matchings(g)) {
      json line;
      line["pairs"] = pm.str();
      std::cout << line.dump() << "\n";
    }
    return 0;
  }
  if (kind == "forests" || kind == "forests-C") {
    const bool intrinsic = kind == "forests-C" && m0_text.empty();
    std::optional<PerfectMatching> m0;
    if (kind == "forests-C" && !m0_text.empty()) m0 = require_m0(m0_text, g);
    for (const auto& f : enumerate_spanning_forests(g)) {
      if (kind == "forests-C") {
        if (m0) {
          if (!is_compatible(f, *m0) || !satisfies_condition_C(f, *m0)) continue;
        } else if (!satisfies_condition_C(f)) {
          continue;
        }
      }
      json line;
      line["out"] = f.str();
      if (m0) {
        const int sign = forest_sign(f, *m0);
        Rational w(sign);
        for (Vertex v = 1; v <= f.n; ++v)
          if (!m0->contains(v, f.out[v])) w *= g.weight(v, f.out[v]);
        line["sign"] = sign;
        line["weight"] = w.str();
      } else {
        Rational w(1);
        for (Vertex v = 1; v <= f.n; ++v) w *= g.weight(v, f.out[v]);
        if (intrinsic || kind == "forests") line["weight"] = w.str();
      }
      std::cout << line.dump() << "\n";
    }
    return 0;
  }
  if (kind == "rcrsf") {
    const PerfectMatching m0 = require_m0(m0_text, g);
    for (const auto& f : enumerate_rcrsf(g, m0)) {
      json line;
      line["out"] = f.str();
      line["cycles"] = f.cycles();
      line["condition_C"] = rcrsf_condition_C(f, m0);
      Rational w(reference_description_sign(f.out, f.n, m0));
      for (Vertex v = 1; v <= f.n; ++v)
        if (!m0.contains(v, f.out[v])) w *= g.weight(v, f.out[v]);
      line["weight"] = w.str();
      std::cout << line.dump() << "\n";
    }
    return 0;
  }
  if (kind == "crsf") {
    const SkewMatrix minor = principal_submatrix(m, m.r());
    const RootedGraph core(minor.size(), 0, minor.entries());
    for (const auto& f : enumerate_crsf(core)) {
      json line;
      line["out"] = f.str();
      line["cycles"] = f.cycles();
      line["condition_C"] = crsf_condition_C(f);
      std::cout << line.dump() << "\n";
    }
    return 0;
  }
  std::cerr << "error: unknown kind '" << kind << "'\n";
  return kMalformed;
}

void add_instance_options(CLI::App* cmd, InputOptions& in, bool with_path) {
  if (with_path) {
    cmd->add_option("matrix", in.path, "matrix file (text format)");
    cmd->add_flag("--random", in.random, "generate the instance instead of reading a file");
  }
  cmd->add_option("--n", in.n, "non-root vertex count (even)");
  cmd->add_option("--r", in.r, "root count (>= 1)");
  cmd->add_option("--seed", in.seed, "deterministic seed");
  cmd->add_option("--density", in.density, "edge keep probability outside the balancer column");
  cmd->add_option("--value-range", in.value_range, "bound on drawn numerators/denominators");
  cmd->add_option("--edges", in.edges, "explicit support, e.g. 1-2,1-3,3-5");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Pfaffian / half-tree identity toolkit"};
  app.require_subcommand(1);

  InputOptions gen_in, verify_in, enum_in;
  std::string out_path, suite = "all", kind, m0_text;
  int v_count = 5;

  CLI::App* gen = app.add_subcommand("generate", "write a zero-column-sum instance");
  add_instance_options(gen, gen_in, false);
  gen->add_option("--out,-o", out_path, "output path (default: stdout)");

  CLI::App* ver = app.add_subcommand("verify", "run identity suites, JSON report on stdout");
  add_instance_options(ver, verify_in, true);
  ver->add_option("--suite", suite, "pfaffian|halftree|det-forest|opening|linebundle|all")
      ->check(CLI::IsMember(suite_names()));
  std::string verify_m0;
  ver->add_option("--m0", verify_m0, "pin one reference matching, e.g. 1-4,2-3");

  CLI::App* enu = app.add_subcommand("enumerate", "dump configurations as JSON lines");
  add_instance_options(enu, enum_in, true);
  enu->add_option("--kind", kind, "matchings|forests|forests-C|rcrsf|crsf|3trees")->required();
  enu->add_option("--m0", m0_text, "reference matching, e.g. 1-4,2-3");
  enu->add_option("--v", v_count, "vertex count for --kind 3trees");

  int rc = 0;
  gen->callback([&] { rc = run_generate(gen_in, out_path); });
  ver->callback([&] {
    if (verify_in.path.empty() && !verify_in.random) {
      std::cerr << "error: give a matrix file or --random\n";
      rc = kMalformed;
      return;
    }
    rc = run_verify(verify_in, suite, verify_m0);
  });
  enu->callback([&] {
    if (kind != "3trees" && enum_in.path.empty() && !enum_in.random) {
      std::cerr << "error: give a matrix file or --random\n";
      rc = kMalformed;
      return;
    }
    rc = run_enumerate(enum_in, kind, m0_text, v_count);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return rc;
}
