#include "halftree/matrix.hpp"

#include "halftree/check.hpp"

namespace halftree {

std::size_t RationalMatrix::index(int i, int j) const {
  HALFTREE_CHECK(i >= 0 && i < rows_ && j >= 0 && j < cols_, "matrix index out of range");
  return static_cast<std::size_t>(i) * cols_ + j;
}

Rational determinant(const RationalMatrix& m) {
  HALFTREE_CHECK(m.square(), "determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return Rational(1);
  RationalMatrix a = m;
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row) {
      if (!a.at(row, col).is_zero()) { pivot = row; break; }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
      sign = -sign;
    }
    const Rational& p = a.at(col, col);
    for (int row = col + 1; row < n; ++row) {
      if (a.at(row, col).is_zero()) continue;
      const Rational factor = a.at(row, col) / p;
      for (int j = col; j < n; ++j) a.at(row, j) -= factor * a.at(col, j);
    }
  }
  Rational det(sign);
  for (int i = 0; i < n; ++i) det *= a.at(i, i);
  return det;
}

}  // namespace halftree
