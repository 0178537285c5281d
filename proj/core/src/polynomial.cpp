#include "halftree/polynomial.hpp"

#include <algorithm>

#include "halftree/check.hpp"

namespace halftree {

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_[{}] = c;
  return p;
}

Polynomial Polynomial::variable(int id) {
  Polynomial p;
  p.terms_[{id}] = Rational(1);
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p;
  for (const auto& [m, c] : terms_) p.terms_[m] = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      auto it = out.terms_.find(m);
      if (it == out.terms_.end()) {
        out.terms_[std::move(m)] = ca * cb;
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
  Rational total;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int id : m) {
      HALFTREE_CHECK(id >= 0 && id < static_cast<int>(values.size()),
                     "missing value for a variable");
      term *= values[id];
    }
    total += term;
  }
  return total;
}

}  // namespace halftree
