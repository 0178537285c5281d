#pragma once

#include <map>
#include <string>
#include <vector>

#include "halftree/rational.hpp"

namespace halftree {

/// Monomial as the sorted list of variable ids (repeats encode powers).
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over exact rationals, kept in canonical
/// form (sorted monomials, no zero coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(int id);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Substitutes values[id] for each variable.
  Rational evaluate(const std::vector<Rational>& values) const;

 private:
  std::map<Monomial, Rational> terms_;
};

}  // namespace halftree
