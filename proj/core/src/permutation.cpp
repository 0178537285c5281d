#include "halftree/permutation.hpp"

#include <algorithm>

#include "halftree/check.hpp"

namespace halftree {

int permutation_sign(std::span<const int> seq) {
  std::vector<int> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  HALFTREE_CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                 "permutation description has repeated values");
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace halftree
