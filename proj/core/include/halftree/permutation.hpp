#pragma once

#include <span>
#include <vector>

namespace halftree {

/// Sign of the permutation written in one-line form `seq` (distinct values,
/// any labels); computed by counting inversions.
int permutation_sign(std::span<const int> seq);

inline int permutation_sign(const std::vector<int>& seq) {
  return permutation_sign(std::span<const int>(seq));
}

}  // namespace halftree
