#include "doctest.h"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "nilshift/weyl/weyl.hpp"
#include "support/gen.hpp"

using namespace nilshift;

namespace {

AffineWeylElement random_element(const DatumPtr& d, testing::Gen& g) {
  const auto& W = d->weyl_elements();
  std::vector<int> s(d->rank());
  for (auto& x : s) x = g.range(-2, 2);
  return AffineWeylElement(d, s, W[static_cast<std::size_t>(g.range(0, static_cast<int>(W.size()) - 1))]);
}

}  // namespace

TEST_CASE("affine multiplication examples") {
  auto su2 = RootDatum::parse("SU2");
  auto s = AffineWeylElement::simple_reflection(su2, 0);
  auto t = AffineWeylElement::translation(su2, {1});
  CHECK(s * t * s == AffineWeylElement::translation(su2, {-1}));
  auto s1 = RootDatum::parse("S1");
  CHECK(AffineWeylElement::translation(s1, {2}) * AffineWeylElement::translation(s1, {-5}) ==
        AffineWeylElement::translation(s1, {-3}));
  CHECK_THROWS_AS(t * AffineWeylElement::identity(s1), MismatchError);
}

TEST_CASE("group axioms on random samples") {
  testing::Gen g(1);
  for (const char* name : {"S1", "T2", "SU2", "SU3", "T1xSU2"}) {
    auto d = RootDatum::parse(name);
    auto e = AffineWeylElement::identity(d);
    for (int i = 0; i < 20; ++i) {
      auto a = random_element(d, g), b = random_element(d, g), c = random_element(d, g);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * a.inverse() == e);
      CHECK(a.inverse() * a == e);
      CHECK(e * a == a);
      CHECK(AffineWeylElement::parse(d, a.to_string()) == a);
    }
  }
}

TEST_CASE("Weyl enumeration") {
  auto su2 = RootDatum::parse("SU2");
  REQUIRE(su2->weyl_elements().size() == 2);
  CHECK(su2->weyl_elements()[0].is_identity());
  CHECK(RootDatum::parse("SU3")->weyl_elements().size() == 6);
  CHECK(RootDatum::parse("SU4")->weyl_elements().size() == 24);
  auto t3 = RootDatum::parse("T3");
  CHECK(t3->weyl_elements().size() == 1);
  CHECK(t3->weyl_elements()[0].is_identity());
  for (const char* name : {"SU2", "SU3", "T1xSU3"}) {
    auto d = RootDatum::parse(name);
    for (std::size_t i = 0; i < d->num_simple(); ++i) {
      CHECK((d->simple_reflection(i) * d->simple_reflection(i)).is_identity());
      CHECK(d->pairing(d->simple_root(i), d->simple_coroot(i)) == 2);
    }
  }
  CHECK_THROWS_AS(RootDatum::parse("BAD"), ParseError);
}

TEST_CASE("twist examples") {
  auto s1 = RootDatum::parse("S1");
  const auto& R = s1->ring();
  auto A = twist_automorphism(AffineWeylElement::translation(s1, {1}));
  CHECK(A(parse_ratfunc("h", R)) == parse_ratfunc("h+u", R));
  CHECK(A(parse_ratfunc("u", R)) == parse_ratfunc("u", R));
  auto su2 = RootDatum::parse("SU2");
  auto As = twist_automorphism(AffineWeylElement::simple_reflection(su2, 0));
  CHECK(As(parse_ratfunc("h", su2->ring())) == parse_ratfunc("-h", su2->ring()));
  auto Aid = twist_automorphism(AffineWeylElement::identity(su2));
  CHECK(Aid(parse_ratfunc("h^2/(h-u)", su2->ring())) == parse_ratfunc("h^2/(h-u)", su2->ring()));
}

TEST_CASE("twist is a group action") {
  testing::Gen g(2);
  for (const char* name : {"S1", "T2", "SU2", "SU3"}) {
    auto d = RootDatum::parse(name);
    std::vector<std::size_t> vars;
    for (std::size_t k = 0; k <= d->rank(); ++k) vars.push_back(k);
    for (int i = 0; i < 15; ++i) {
      auto a = random_element(d, g), b = random_element(d, g);
      RatFunc f = g.ratfunc(d->ring(), vars);
      CHECK(twist_automorphism(a * b)(f) == twist_automorphism(a)(twist_automorphism(b)(f)));
    }
  }
}

TEST_CASE("Weyl invariants are fixed") {
  auto d = RootDatum::parse("SU3");
  const auto& R = d->ring();
  // weights of the standard representation in fundamental-weight coordinates
  RatFunc x1 = parse_ratfunc("h1", R), x2 = parse_ratfunc("h2-h1", R), x3 = parse_ratfunc("-h2", R);
  RatFunc e2 = x1 * x2 + x1 * x3 + x2 * x3, e3 = x1 * x2 * x3;
  for (const auto& w : d->weyl_elements()) {
    auto A = twist_automorphism(AffineWeylElement::weyl(d, w));
    CHECK(A(e2) == e2);
    CHECK(A(e3) == e3);
  }
  auto su2 = RootDatum::parse("SU2");
  RatFunc h2 = parse_ratfunc("h^2", su2->ring());
  CHECK(twist_automorphism(AffineWeylElement::simple_reflection(su2, 0))(h2) == h2);
}
