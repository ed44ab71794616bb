#include "doctest.h"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "support/gen.hpp"

using namespace nilshift;

namespace {

RingPtr ring_uhqz() {
  return PolyRing::make({{"u", false}, {"h", false}, {"q", true}, {"z", true}});
}

RatFunc P(const char* s, const RingPtr& r) { return parse_ratfunc(s, r); }

}  // namespace

TEST_CASE("arith examples") {
  auto R = ring_uhqz();
  CHECK(P("(h+u) + (h-u)", R) == P("2*h", R));
  CHECK(P("(h^2-u^2)/(h-u)", R) == P("h+u", R));
  CHECK((P("q", R) * P("q^-1", R)) == RatFunc(R, 1));
  CHECK_THROWS_AS(P("h", R) / RatFunc(R), DivisionByZero);
}

TEST_CASE("canonical form is unique") {
  auto R = ring_uhqz();
  RatFunc a = P("(h^2 - u^2)/(2*h*q - 2*u*q)", R);
  CHECK(a.to_string() == "1/2*u*q^-1 + 1/2*h*q^-1");
  RatFunc b = P("(h + u)/(-h - 3*u)", R);
  CHECK(b.den().terms().rbegin()->second > 0);
  CHECK(b == P("(-h-u)/(h+3*u)", R));
}

TEST_CASE("print and parse round trip") {
  auto R = ring_uhqz();
  for (const char* s : {"h*z + z^2 - q", "-1/2*u^2*q^-1 + 3", "0", "(h + u)/(h^2 - 2*u)", "-q"}) {
    RatFunc f = P(s, R);
    CHECK(P(f.to_string().c_str(), R) == f);
    CHECK(P(f.to_string().c_str(), R).to_string() == f.to_string());
  }
  CHECK(P("h*z + z^2 - q", R).to_string() == "h*z + z^2 - q");
  CHECK_THROWS_AS(P("h + w", R), ParseError);
  CHECK_THROWS_AS(P("h + (", R), ParseError);
}

TEST_CASE("gcd and exact division") {
  auto R = PolyRing::make({{"x", false}, {"y", false}, {"z", true}});
  Polynomial a = parse_polynomial("(x+y)^3*(x-2*y+1)*z^2", R);
  Polynomial b = parse_polynomial("(x+y)^2*(x^2+y+3)*z^-1", R);
  CHECK(gcd(a, b) == parse_polynomial("(x+y)^2", R));
  CHECK(divide_exact(a, parse_polynomial("x+y", R)).has_value());
  CHECK_FALSE(divide_exact(b, parse_polynomial("x-y", R)).has_value());
  CHECK(gcd(parse_polynomial("x^2*y", R), parse_polynomial("x*y^3", R)) == parse_polynomial("x*y", R));
}

TEST_CASE("substitute") {
  auto R = ring_uhqz();
  std::size_t h = R->require("h");
  CHECK(P("h", R).substitute({{h, P("h+u", R)}}) == P("h+u", R));
  CHECK(P("h*z^2/(h-u)", R).substitute({}) == P("h*z^2/(h-u)", R));
  auto R2 = PolyRing::make({{"h1", false}, {"h2", false}});
  CHECK(P("h1+h2", R2).substitute({{0, P("-h2", R2)}}).is_zero());
  CHECK_THROWS_AS(P("1/(h-u)", R).substitute({{h, P("u", R)}}), MathError);
  CHECK(P("z^-2 + h", R).substitute({{R->require("z"), P("q*z", R)}}) == P("q^-2*z^-2 + h", R));
  CHECK(P("u/h", R).evaluate(0, 0).is_zero());
  CHECK_THROWS_AS(P("u/h", R).evaluate(1, 0), MathError);
}

TEST_CASE("ring axioms on random rational functions") {
  auto R = ring_uhqz();
  testing::Gen g(7);
  std::vector<std::size_t> vars{0, 1, 2};
  for (int i = 0; i < 40; ++i) {
    RatFunc a = g.ratfunc(R, vars), b = g.ratfunc(R, vars), c = g.ratfunc(R, vars);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RatFunc(R));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("substitute is a ring homomorphism") {
  auto R = ring_uhqz();
  testing::Gen g(11);
  std::vector<std::size_t> vars{0, 1, 3};
  std::map<std::size_t, RatFunc> img{{1, P("h + 2*u", R)}, {3, P("q*z", R)}};
  for (int i = 0; i < 30; ++i) {
    RatFunc a = g.ratfunc(R, vars), b = g.ratfunc(R, vars);
    CHECK((a * b).substitute(img) == a.substitute(img) * b.substitute(img));
    CHECK((a + b).substitute(img) == a.substitute(img) + b.substitute(img));
  }
}
