#include "nilshift/symbolic/rational.hpp"

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

Rational pow(const Rational& r, int e) {
  if (e < 0) {
    if (r == 0) throw DivisionByZero();
    return pow(Rational(1) / r, -e);
  }
  Rational out(1), base(r);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace nilshift
