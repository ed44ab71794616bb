#include "doctest.h"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/groebner.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "support/gen.hpp"

using namespace nilshift;

namespace {

std::vector<Polynomial> polys(const RingPtr& r, std::initializer_list<const char*> xs) {
  std::vector<Polynomial> out;
  for (auto* s : xs) out.push_back(parse_polynomial(s, r));
  return out;
}

std::vector<std::string> basis_strings(const IdealPresentation& I) {
  std::vector<std::string> out;
  for (const auto& g : I.basis()) out.push_back(I.from_work(g).to_string());
  return out;
}

}  // namespace

TEST_CASE("linear ideal") {
  auto R = PolyRing::make({{"x", false}, {"y", false}});
  auto I = groebner(IdealPresentation(R, polys(R, {"x+y", "x-y"})));
  CHECK(basis_strings(I) == std::vector<std::string>{"y", "x"});
  CHECK(verify_basis(I));
}

TEST_CASE("principal ideal is already reduced") {
  auto R = PolyRing::make({{"h", false}, {"q", false}, {"z", false}});
  auto I = groebner(IdealPresentation(R, polys(R, {"z^2+h*z-q"})));
  CHECK(basis_strings(I) == std::vector<std::string>{"h*z + z^2 - q"});
}

TEST_CASE("hand Buchberger run for <x^2-q, x^3>") {
  // S(x^3, x^2-q) = x*q; then S(x^2-q, x*q) = q^2. Reduced grevlex basis {q*x, x^2-q, q^2}.
  auto R = PolyRing::make({{"x", false}, {"q", false}});
  auto I = groebner(IdealPresentation(R, polys(R, {"x^2-q", "x^3"})));
  CHECK(basis_strings(I) == std::vector<std::string>{"q^2", "x*q", "x^2 - q"});
  CHECK(ideal_membership(parse_polynomial("q^2", R), I));
  CHECK_FALSE(ideal_membership(parse_polynomial("q", R), I));
  CHECK(verify_basis(I));
}

TEST_CASE("normal forms") {
  auto R = PolyRing::make({{"x", false}, {"l", false}, {"q", false}});
  auto I = groebner(IdealPresentation(R, polys(R, {"x*(x-l)-q"})),
                    MonomialOrder("block", {{0}, {1, 2}}));
  CHECK(normal_form(parse_polynomial("x^2", R), I) == parse_polynomial("l*x+q", R));
  Polynomial g = parse_polynomial("x*(x-l)-q", R);
  CHECK(normal_form(g, I).is_zero());
  auto J = groebner(IdealPresentation(R, polys(R, {"x", "l"})));
  CHECK(normal_form(Polynomial(R, 1), J) == Polynomial(R, 1));
  IdealPresentation bare(R, polys(R, {"x"}));
  CHECK_THROWS_AS(normal_form(Polynomial(R, 1), bare), MathError);
}

TEST_CASE("Laurent membership by saturation") {
  auto R = PolyRing::make({{"h", false}, {"q", true}, {"z", true}});
  auto I = IdealPresentation(R, polys(R, {"z^2+h*z-q"}));
  CHECK(ideal_membership(parse_polynomial("z^2+h*z-q", R), I));
  CHECK(ideal_membership(parse_polynomial("z+h-q*z^-1", R), I));
  auto J = IdealPresentation(R, polys(R, {"z-1"}));
  CHECK_FALSE(ideal_membership(Polynomial(R, 1), J));
  // a monomial is a unit in the Laurent ring
  CHECK(groebner(IdealPresentation(R, polys(R, {"q*z"}))).is_unit());
}

TEST_CASE("random combinations are members") {
  auto R = PolyRing::make({{"h", false}, {"q", false}, {"z", true}});
  auto I = groebner(IdealPresentation(R, polys(R, {"z^2+h*z-q", "h*z+h^2-q"})));
  testing::Gen g(3);
  for (int i = 0; i < 20; ++i) {
    Polynomial f = g.poly(R, {0, 1, 2}) * I.generators()[0] + g.poly(R, {0, 1, 2}) * I.generators()[1];
    CHECK(ideal_membership(f, I));
    Polynomial nf = normal_form(f + g.poly(R, {0, 2}), I);
    CHECK(normal_form(nf, I) == nf);
  }
}

TEST_CASE("normal form is idempotent and additive") {
  auto R = PolyRing::make({{"x", false}, {"y", false}, {"z", false}});
  auto I = groebner(IdealPresentation(R, polys(R, {"x^2+y*z-1", "y^2-x*z", "z^3-x"})));
  CHECK(verify_basis(I));
  testing::Gen g(5);
  for (int i = 0; i < 20; ++i) {
    Polynomial a = g.poly(R, {0, 1, 2}, 4, 3), b = g.poly(R, {0, 1, 2}, 4, 3);
    Polynomial na = normal_form(a, I);
    CHECK(normal_form(na, I) == na);
    CHECK(normal_form(a - b, I) == na - normal_form(b, I));
  }
}

TEST_CASE("Krull dimension") {
  auto R = PolyRing::make({{"h", false}, {"z", true}});
  CHECK(krull_dimension(IdealPresentation(R, polys(R, {"z^2+h*z-1"}))) == 1);
  auto R2 = PolyRing::make({{"h1", false}, {"h2", false}, {"z1", true}, {"z2", true}});
  CHECK(krull_dimension(IdealPresentation(R2, polys(R2, {"z1-1", "z2-1"}))) == 2);
  CHECK(krull_dimension(IdealPresentation(R2, polys(R2, {"1"}))) == -1);
  CHECK(krull_dimension(IdealPresentation(R2, {})) == 4);
}

TEST_CASE("ideal equality and budget") {
  auto R = PolyRing::make({{"x", false}, {"y", false}});
  CHECK(ideals_equal(IdealPresentation(R, polys(R, {"x+y", "x-y"})), IdealPresentation(R, polys(R, {"x", "y"}))));
  CHECK_FALSE(ideals_equal(IdealPresentation(R, polys(R, {"x*y"})), IdealPresentation(R, polys(R, {"x"}))));
  auto R3 = PolyRing::make({{"x", false}, {"y", false}, {"z", false}});
  CHECK_THROWS_AS(groebner(IdealPresentation(R3, polys(R3, {"x^2*y-z^3", "x*y^2-z", "x*z-y^2+1"})), 3),
                  BudgetExhausted);
}
