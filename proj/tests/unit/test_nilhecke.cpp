#include "doctest.h"
#include "nilshift/nilhecke/nilhecke.hpp"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "support/nilhecke_gen.hpp"

using namespace nilshift;

namespace {

RatFunc rf(const DatumPtr& d, const char* s) { return parse_ratfunc(s, d->ring()); }

using testing::random_affine;
using testing::random_element;
using testing::coeff_vars;

}  // namespace

TEST_CASE("S1 relation zh = (h+u)z") {
  auto d = RootDatum::parse("S1");
  auto z = NilHeckeElement::basis(AffineWeylElement::translation(d, {1}));
  auto h = NilHeckeElement::scalar(d, rf(d, "h"));
  CHECK(convolve(z, h) == NilHeckeElement(AffineWeylElement::translation(d, {1}), rf(d, "h+u")));
  CHECK(convolve(z, h) - convolve(h, z) == rf(d, "u") * z);
  CHECK(u_reduce(convolve(z, h) - convolve(h, z)).is_zero());
  CHECK(poisson_bracket_first_order(z, h) == z);
  auto one = NilHeckeElement::one(d);
  CHECK(convolve(one, z) == z);
}

TEST_CASE("SU2 basic identities") {
  auto d = RootDatum::parse("SU2");
  auto s = NilHeckeElement::basis(AffineWeylElement::simple_reflection(d, 0));
  CHECK(convolve(s, s) == NilHeckeElement::one(d));
  auto A = demazure(d, 0);
  CHECK(convolve(A, A).is_zero());
  // A (h e_id) - (s.h) A is a multiple of e_id.
  auto h = NilHeckeElement::scalar(d, rf(d, "h"));
  auto lhs = convolve(A, h) - convolve(NilHeckeElement::scalar(d, rf(d, "-h")), A);
  REQUIRE(lhs.terms().size() == 1);
  CHECK(lhs.terms().begin()->first.is_identity());
  CHECK(lhs.terms().begin()->second.is_constant());
  CHECK_THROWS_AS(demazure(d, 1), MismatchError);
}

TEST_CASE("braid relation and nil relations") {
  for (const char* name : {"SU2", "SU3", "T1xSU2", "SU2xSU2"}) {
    auto d = RootDatum::parse(name);
    for (std::size_t i = 0; i < d->num_simple(); ++i) CHECK(convolve(demazure(d, i), demazure(d, i)).is_zero());
  }
  auto d = RootDatum::parse("SU3");
  auto A1 = demazure(d, 0), A2 = demazure(d, 1);
  CHECK(convolve(convolve(A1, A2), A1) == convolve(convolve(A2, A1), A2));
  auto dd = RootDatum::parse("SU2xSU2");
  auto B1 = demazure(dd, 0), B2 = demazure(dd, 1);
  CHECK(convolve(B1, B2) == convolve(B2, B1));
}

TEST_CASE("associativity and linearity on random samples") {
  testing::Gen g(11);
  for (const char* name : {"S1", "T2", "SU2", "SU3"}) {
    auto d = RootDatum::parse(name);
    int n = std::string(name) == "SU3" ? 40 : 100;
    for (int i = 0; i < n; ++i) {
      auto x = random_element(d, g), y = random_element(d, g), z = random_element(d, g);
      CHECK(convolve(convolve(x, y), z) == convolve(x, convolve(y, z)));
      RatFunc f(g.poly(d->ring(), coeff_vars(d), 2, 1));
      CHECK(convolve(f * x, y) == f * convolve(x, y));
      // x * (f y) = Σ f_a A_a(f) e_a * y
      NilHeckeElement twisted(d);
      for (const auto& [a, c] : x.terms()) twisted.add_term(a, c * twist_automorphism(a)(f));
      CHECK(convolve(x, f * y) == convolve(twisted, y));
      CHECK(NilHeckeElement::parse(d, x.to_string()) == x);
    }
  }
}

TEST_CASE("symmetrizer and spherical subalgebra") {
  testing::Gen g(12);
  for (const char* name : {"SU2", "SU3", "T2"}) {
    auto d = RootDatum::parse(name);
    auto e = symmetrizer(d);
    CHECK(convolve(e, e) == e);
    CHECK(symmetrize(NilHeckeElement::one(d)) == e);
    for (int i = 0; i < 10; ++i) {
      auto a = symmetrize(random_element(d, g, false));
      auto b = symmetrize(random_element(d, g, false));
      auto ab = convolve(a, b);
      CHECK(symmetrize(ab) == ab);
      CHECK(u_reduce(ab - convolve(b, a)).is_zero());
    }
  }
  auto t = RootDatum::parse("T2");
  auto x = random_element(t, g);
  CHECK(symmetrize(x) == x);
  auto su2 = RootDatum::parse("SU2");
  auto sig = AffineWeylElement::translation(su2, {1});
  auto s = AffineWeylElement::simple_reflection(su2, 0);
  auto y = symmetrize(NilHeckeElement::basis(sig) + NilHeckeElement::basis(s * sig * s));
  auto es = NilHeckeElement::basis(s);
  CHECK(convolve(es, y) == y);
  CHECK(convolve(y, es) == y);
}

TEST_CASE("u_reduce") {
  auto d = RootDatum::parse("S1");
  auto z = AffineWeylElement::translation(d, {1});
  CHECK(u_reduce(NilHeckeElement::basis(z)) == NilHeckeElement::basis(z));
  CHECK(u_reduce(NilHeckeElement(z, rf(d, "1/(h-u)"))) == NilHeckeElement(z, rf(d, "1/h")));
  try {
    u_reduce(NilHeckeElement(z, rf(d, "h/u")));
    FAIL("expected pole error");
  } catch (const MathError& err) {
    CHECK(std::string(err.what()).find("e[(1);id]") != std::string::npos);
  }
}

TEST_CASE("bracket laws") {
  testing::Gen g(13);
  auto t2 = RootDatum::parse("T2");
  auto h1 = NilHeckeElement::scalar(t2, rf(t2, "h1"));
  auto h2 = NilHeckeElement::scalar(t2, rf(t2, "h2"));
  auto z1 = NilHeckeElement::basis(AffineWeylElement::translation(t2, {1, 0}));
  auto z2 = NilHeckeElement::basis(AffineWeylElement::translation(t2, {0, 1}));
  CHECK(poisson_bracket_first_order(h1, h2).is_zero());
  CHECK(poisson_bracket_first_order(z1, z2).is_zero());
  CHECK(poisson_bracket_first_order(z1, h1) == z1);
  CHECK(poisson_bracket_first_order(z1, h2).is_zero());
  auto br = [](const NilHeckeElement& a, const NilHeckeElement& b) { return poisson_bracket_first_order(a, b); };
  auto mul0 = [](const NilHeckeElement& a, const NilHeckeElement& b) { return u_reduce(convolve(a, b)); };
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(t2, g, false), b = random_element(t2, g, false), c = random_element(t2, g, false);
    CHECK(br(a, b) == -br(b, a));
    CHECK(br(a, convolve(b, c)) == mul0(br(a, b), c) + mul0(b, br(a, c)));
    auto a0 = u_reduce(a), b0 = u_reduce(b), c0 = u_reduce(c);
    CHECK((br(a0, br(b0, c0)) + br(b0, br(c0, a0)) + br(c0, br(a0, b0))).is_zero());
  }
  // Non-commutative limit is rejected.
  auto su2 = RootDatum::parse("SU2");
  auto s = NilHeckeElement::basis(AffineWeylElement::simple_reflection(su2, 0));
  CHECK_THROWS_AS(poisson_bracket_first_order(s, NilHeckeElement::scalar(su2, rf(su2, "h"))), MathError);
}

TEST_CASE("SU2 spherical generators") {
  auto d = RootDatum::parse("SU2");
  auto z = NilHeckeElement::basis(AffineWeylElement::translation(d, {1}));
  auto zi = NilHeckeElement::basis(AffineWeylElement::translation(d, {-1}));
  auto h = NilHeckeElement::scalar(d, rf(d, "h"));
  auto a = symmetrize(convolve(h, h));
  auto b = symmetrize(z + zi);
  auto c = symmetrize(convolve(h, z - zi));
  auto e = symmetrizer(d);
  auto br = [](const NilHeckeElement& x, const NilHeckeElement& y) { return poisson_bracket_first_order(x, y); };
  auto m0 = [](const NilHeckeElement& x, const NilHeckeElement& y) { return u_reduce(convolve(x, y)); };
  // With {z,h} = z: {a,b} = -2c, {a,c} = -2ab, {b,c} = b^2 - 4.
  CHECK(br(a, b) == Rational(-2) * u_reduce(c));
  CHECK(br(a, c) == Rational(-2) * m0(a, b));
  CHECK(br(b, c) == m0(b, b) - Rational(4) * e);
  CHECK(m0(c, c) == convolve(u_reduce(a), m0(b, b) - Rational(4) * e));
}
