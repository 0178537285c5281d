#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halftree/matrix.hpp"
#include "halftree/rational.hpp"

namespace halftree {

/// Skew-symmetric rational matrix of size n + r: n ordinary rows/columns
/// (even in valid instances) followed by r root rows/columns. The type does
/// not enforce skewness so that corrupt inputs can be held and reported by
/// validate().
class SkewMatrix {
 public:
  SkewMatrix(int n, int r);
  SkewMatrix(int n, int r, RationalMatrix entries);

  int n() const { return n_; }
  int r() const { return r_; }
  int size() const { return n_ + r_; }

  const Rational& at(int i, int j) const { return entries_.at(i, j); }

  /// Sets a_ij and its mirror a_ji = -value.
  void set_pair(int i, int j, const Rational& value);
  /// Raw single-cell write; may break skewness (used by readers and tests).
  void set_raw(int i, int j, const Rational& value) { entries_.at(i, j) = value; }

  const RationalMatrix& entries() const { return entries_; }

 private:
  int n_, r_;
  RationalMatrix entries_;
};

struct SkewIssue {
  enum class Kind { antisymmetry, row_sum };
  Kind kind;
  int i = 0;
  int j = 0;           // column for antisymmetry issues, unused for row sums
  Rational value;      // offending cell sum / row sum
};

struct SkewValidation {
  std::vector<SkewIssue> issues;
  bool passed() const { return issues.empty(); }
  bool antisymmetric() const;
  std::string summary() const;
};

/// Reports every antisymmetry violation (cells with a_ij + a_ji != 0) and,
/// when require_zero_sum is set, every row whose entries do not sum to zero.
SkewValidation validate(const SkewMatrix& m, bool require_zero_sum);

/// Pfaffian as the signed sum over pairings of the index set. 1 for the 0x0
/// matrix, 0 for odd sizes. Exponential; the independent ground truth.
Rational pfaffian_by_pairings(const SkewMatrix& m);

/// Pfaffian by skew-symmetric elimination with pivot-swap sign tracking.
Rational pfaffian_by_elimination(const SkewMatrix& m);

Rational determinant(const SkewMatrix& m);

/// Leading principal submatrix after dropping the last drop_last rows/columns.
SkewMatrix principal_submatrix(const SkewMatrix& m, int drop_last);

struct InstanceSpec {
  int n = 4;
  int r = 1;
  std::optional<std::vector<std::pair<int, int>>> edges;  // 1-based, i<j
  std::uint64_t seed = 0;
  int value_range = 10;
};

/// Deterministic zero-column-sum instance. Pairs not touching vertex n+1 are
/// drawn at random (restricted to `edges` when given); column n+1 balances
/// each row. When `edges` excludes {i, n+1}, the largest free slot of row i
/// is solved for instead, so the requested support is realized exactly.
SkewMatrix random_instance(const InstanceSpec& spec);

/// Random skew matrix of the given size, no zero-sum constraint (test oracle
/// fodder; size may be odd).
SkewMatrix random_skew(int size, std::uint64_t seed, int value_range);

/// Text format: first line "n r", then n+r rows of n+r rationals. Exact
/// round-trip.
void write_matrix(std::ostream& os, const SkewMatrix& m);
SkewMatrix read_matrix(std::istream& is);
SkewMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const SkewMatrix& m);

}  // namespace halftree
