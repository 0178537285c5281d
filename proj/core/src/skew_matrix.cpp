#include "halftree/skew_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "halftree/check.hpp"
#include "halftree/permutation.hpp"
#include "halftree/rng.hpp"

namespace halftree {

SkewMatrix::SkewMatrix(int n, int r) : n_(n), r_(r), entries_(n + r, n + r) {
  HALFTREE_CHECK(n >= 0 && r >= 0, "negative matrix dimensions");
}

SkewMatrix::SkewMatrix(int n, int r, RationalMatrix entries)
    : n_(n), r_(r), entries_(std::move(entries)) {
  HALFTREE_CHECK(n >= 0 && r >= 0, "negative matrix dimensions");
  HALFTREE_CHECK(entries_.rows() == n + r && entries_.cols() == n + r,
                 "entry block does not match n + r");
}

void SkewMatrix::set_pair(int i, int j, const Rational& value) {
  HALFTREE_CHECK(i != j || value.is_zero(), "nonzero diagonal entry");
  entries_.at(i, j) = value;
  if (i != j) entries_.at(j, i) = -value;
}

bool SkewValidation::antisymmetric() const {
  return std::none_of(issues.begin(), issues.end(), [](const SkewIssue& is) {
    return is.kind == SkewIssue::Kind::antisymmetry;
  });
}

std::string SkewValidation::summary() const {
  std::ostringstream os;
  for (const auto& is : issues) {
    if (is.kind == SkewIssue::Kind::antisymmetry)
      os << "a(" << is.i << "," << is.j << ") + a(" << is.j << "," << is.i
         << ") = " << is.value << "; ";
    else
      os << "row " << is.i << " sums to " << is.value << "; ";
  }
  return os.str();
}

SkewValidation validate(const SkewMatrix& m, bool require_zero_sum) {
  SkewValidation report;
  const int s = m.size();
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      Rational mirror = m.at(i, j) + m.at(j, i);
      if (!mirror.is_zero())
        report.issues.push_back({SkewIssue::Kind::antisymmetry, i, j, mirror});
    }
  }
  if (require_zero_sum) {
    for (int i = 0; i < s; ++i) {
      Rational sum;
      for (int j = 0; j < s; ++j) sum += m.at(i, j);
      if (!sum.is_zero())
        report.issues.push_back({SkewIssue::Kind::row_sum, i, 0, sum});
    }
  }
  return report;
}

namespace {

void pairing_sum(const SkewMatrix& m, std::vector<int>& description,
                 std::vector<bool>& used, Rational& total) {
  const int s = m.size();
  int first = -1;
  for (int i = 0; i < s; ++i) {
    if (!used[i]) { first = i; break; }
  }
  if (first < 0) {
    Rational term(permutation_sign(description));
    for (std::size_t t = 0; t + 1 < description.size(); t += 2)
      term *= m.at(description[t], description[t + 1]);
    total += term;
    return;
  }
  used[first] = true;
  for (int j = first + 1; j < s; ++j) {
    if (used[j] || m.at(first, j).is_zero()) continue;
    used[j] = true;
    description.push_back(first);
    description.push_back(j);
    pairing_sum(m, description, used, total);
    description.pop_back();
    description.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace

Rational pfaffian_by_pairings(const SkewMatrix& m) {
  const int s = m.size();
  if (s == 0) return Rational(1);
  if (s % 2 != 0) return Rational(0);
  Rational total;
  std::vector<int> description;
  std::vector<bool> used(s, false);
  pairing_sum(m, description, used, total);
  return total;
}

Rational pfaffian_by_elimination(const SkewMatrix& m) {
  const int s = m.size();
  if (s == 0) return Rational(1);
  if (s % 2 != 0) return Rational(0);
  RationalMatrix a = m.entries();
  int sign = 1;
  Rational product(1);
  for (int k = 0; k + 1 < s; k += 2) {
    int pivot = -1;
    for (int j = k + 1; j < s; ++j) {
      if (!a.at(k, j).is_zero()) { pivot = j; break; }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != k + 1) {
      for (int j = 0; j < s; ++j) std::swap(a.at(pivot, j), a.at(k + 1, j));
      for (int i = 0; i < s; ++i) std::swap(a.at(i, pivot), a.at(i, k + 1));
      sign = -sign;
    }
    const Rational piv = a.at(k, k + 1);
    for (int i = k + 2; i < s; ++i) {
      if (a.at(k, i).is_zero()) continue;
      const Rational factor = a.at(k, i) / piv;
      for (int j = 0; j < s; ++j) a.at(i, j) -= factor * a.at(k + 1, j);
      for (int j = 0; j < s; ++j) a.at(j, i) -= factor * a.at(j, k + 1);
    }
    product *= piv;
  }
  return Rational(sign) * product;
}

Rational determinant(const SkewMatrix& m) { return determinant(m.entries()); }

SkewMatrix principal_submatrix(const SkewMatrix& m, int drop_last) {
  HALFTREE_CHECK(drop_last >= 0 && drop_last <= m.size(), "drop count out of range");
  const int size = m.size() - drop_last;
  const int r = std::max(0, m.r() - drop_last);
  RationalMatrix block(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) block.at(i, j) = m.at(i, j);
  return SkewMatrix(size - r, r, std::move(block));
}

SkewMatrix random_instance(const InstanceSpec& spec) {
  const int n = spec.n, r = spec.r;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const int s = n + r;
  const int balancer = n;  // 0-based index of vertex n+1

  std::set<std::pair<int, int>> support;
  if (spec.edges) {
    for (auto [i, j] : *spec.edges) {
      if (i < 1 || j < 1 || i > s || j > s || i == j)
        throw std::invalid_argument("edge endpoint out of range");
      support.insert({std::min(i, j) - 1, std::max(i, j) - 1});
    }
  }
  auto in_support = [&](int i, int j) {
    if (!spec.edges) return true;
    return support.count({std::min(i, j), std::max(i, j)}) > 0;
  };

  Rng rng(spec.seed);
  SkewMatrix m(n, r);
  for (int i = 0; i < s; ++i) {
    if (i == balancer) continue;
    std::vector<int> slots;
    for (int j = i + 1; j < s; ++j) {
      if (j == balancer) continue;
      if (in_support(i, j)) slots.push_back(j);
    }
    const bool has_balancer_edge = !spec.edges || in_support(i, balancer);
    const int forced = has_balancer_edge ? -1 : (slots.empty() ? -1 : slots.back());
    for (int j : slots) {
      if (j == forced) continue;
      m.set_pair(i, j, rng.nonzero_rational(spec.value_range));
    }
    Rational row_sum;
    for (int j = 0; j < s; ++j) {
      if (j != balancer) row_sum += m.at(i, j);
    }
    if (has_balancer_edge) {
      m.set_pair(i, balancer, -row_sum);
    } else if (forced >= 0) {
      m.set_pair(i, forced, m.at(i, forced) - row_sum);
    } else if (!row_sum.is_zero()) {
      throw std::invalid_argument("edge set cannot realize zero sums for row " +
                                  std::to_string(i + 1));
    }
  }
  HALFTREE_CHECK(validate(m, true).passed(), "generated instance fails zero-sum validation");
  return m;
}

SkewMatrix random_skew(int size, std::uint64_t seed, int value_range) {
  HALFTREE_CHECK(size >= 0, "negative size");
  Rng rng(seed);
  SkewMatrix m(size, 0);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      m.set_pair(i, j, rng.nonzero_rational(value_range));
  return m;
}

void write_matrix(std::ostream& os, const SkewMatrix& m) {
  os << m.n() << ' ' << m.r() << '\n';
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
}

SkewMatrix read_matrix(std::istream& is) {
  long long n = -1, r = -1;
  if (!(is >> n >> r)) throw ParseError("missing 'n r' header");
  if (n < 0 || r < 0 || n + r > 64) throw ParseError("unreasonable dimensions in header");
  const int s = static_cast<int>(n + r);
  RationalMatrix block(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      std::string token;
      if (!(is >> token)) throw ParseError("matrix body ended early");
      block.at(i, j) = Rational::parse(token);
    }
  }
  std::string trailing;
  if (is >> trailing) throw ParseError("trailing content after matrix body");
  return SkewMatrix(static_cast<int>(n), static_cast<int>(r), std::move(block));
}

SkewMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix(in);
}

void write_matrix_file(const std::string& path, const SkewMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  write_matrix(out, m);
}

}  // namespace halftree
