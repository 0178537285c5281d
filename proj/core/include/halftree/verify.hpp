#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halftree/graph.hpp"
#include "halftree/skew_matrix.hpp"

namespace halftree {

struct CheckResult {
  enum class Status { pass, fail, skip };
  std::string name;
  Status status = Status::pass;
  std::string lhs, rhs;  // exact rational strings where applicable
  std::vector<std::pair<std::string, std::string>> counterexample;
};

struct InstanceInfo {
  int n = 0;
  int r = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> path;
  std::optional<std::string> edges;
  int value_range = 10;
};

struct VerificationReport {
  InstanceInfo instance;
  std::string suite;
  std::vector<CheckResult> checks;
  double elapsed_ms = 0.0;
  bool passed() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs the selected cross-oracle checks. Every suite re-checks the
/// zero-column-sum hypothesis as a reported check; identity checks that need
/// the hypothesis are skipped (not failed) when it is broken, so a perturbed
/// instance yields exactly one counterexample. The matrix must already be
/// antisymmetric with even n >= 2 and r >= 1 (malformed input is rejected by
/// the caller). `aux_seed` drives the random connection of the line-bundle
/// checks. Reference matchings are iterated exhaustively unless `pinned_m0`
/// restricts the per-reference loops to one. Per-reference loops honor
/// HALFTREE_THREADS.
VerificationReport run_suite(const SkewMatrix& m, const InstanceInfo& info,
                             const std::string& suite, std::uint64_t aux_seed,
                             const std::optional<PerfectMatching>& pinned_m0 = std::nullopt);

/// Stable-key-order JSON rendering of a report.
std::string report_to_json(const VerificationReport& report);

}  // namespace halftree
