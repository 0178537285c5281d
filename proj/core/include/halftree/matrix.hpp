#pragma once

#include <vector>

#include "halftree/rational.hpp"

namespace halftree {

/// Dense rational matrix. 0-based indices.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const Rational& at(int i, int j) const { return data_[index(i, j)]; }
  Rational& at(int i, int j) { return data_[index(i, j)]; }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int i, int j) const;

  int rows_, cols_;
  std::vector<Rational> data_;
};

/// Exact determinant by rational Gaussian elimination with row swaps.
Rational determinant(const RationalMatrix& m);

}  // namespace halftree
