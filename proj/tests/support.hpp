#pragma once

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "halftree/graph.hpp"
#include "halftree/skew_matrix.hpp"

namespace testsupport {

/// Generic-weight realization of the running-example graph: K4 on {1..4}
/// plus root edges 3-5 and 4-5.
inline halftree::SkewMatrix canonical_instance(std::uint64_t seed = 3) {
  halftree::InstanceSpec spec;
  spec.n = 4;
  spec.r = 1;
  spec.seed = seed;
  spec.edges = std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3},
                                                {2, 4}, {3, 4}, {3, 5}, {4, 5}};
  return halftree::random_instance(spec);
}

inline halftree::PerfectMatching reference_14_23() {
  return halftree::PerfectMatching::from_pairs(4, {{1, 4}, {2, 3}});
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

/// Runs a shell command, captures stdout and the exit code.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

inline int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace testsupport
