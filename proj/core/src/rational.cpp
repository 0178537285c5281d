#include "halftree/rational.hpp"

#include <ostream>

#include "halftree/check.hpp"

namespace halftree {

namespace detail {
void check_failed(const char* file, int line, const std::string& what) {
  throw CheckFailure(std::string(file) + ":" + std::to_string(line) + ": " + what);
}
}  // namespace detail

Rational::Rational(long num, long den) {
  HALFTREE_CHECK(den != 0, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) {
  HALFTREE_CHECK(sgn(v_.get_den()) != 0, "rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational token");
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0)
    throw ParseError("bad rational token '" + std::string(text) + "'");
  if (sgn(q.get_den()) == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  HALFTREE_CHECK(!o.is_zero(), "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  HALFTREE_CHECK(!is_zero(), "inverse of zero");
  return Rational(mpq_class(1) / v_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

}  // namespace halftree
