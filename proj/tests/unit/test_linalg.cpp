#include "doctest.h"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/linalg.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "support/gen.hpp"

using namespace nilshift;

TEST_CASE("matrix inverse and determinant") {
  auto R = PolyRing::make({{"u", false}, {"h", false}, {"q", true}});
  Matrix m(R, 2, 2);
  m(0, 0) = parse_ratfunc("0", R);
  m(0, 1) = parse_ratfunc("q", R);
  m(1, 0) = parse_ratfunc("q^-1", R);
  m(1, 1) = parse_ratfunc("-(h+u)/q", R);
  Matrix inv = m.inverse();
  CHECK(m * inv == Matrix::identity(R, 2));
  CHECK(inv * m == Matrix::identity(R, 2));
  CHECK(m.determinant() == RatFunc(R, -1));
  Matrix s(R, 2, 2);
  s(0, 0) = parse_ratfunc("h", R);
  s(0, 1) = parse_ratfunc("u", R);
  s(1, 0) = parse_ratfunc("h^2", R);
  s(1, 1) = parse_ratfunc("u*h", R);
  CHECK_THROWS_AS(s.inverse(), MathError);
}

TEST_CASE("random invertible matrices") {
  auto R = PolyRing::make({{"u", false}, {"h", false}});
  testing::Gen g(17);
  for (int t = 0; t < 5; ++t) {
    Matrix m(R, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = RatFunc(g.poly(R, {0, 1}, 2, 1));
    if (m.determinant().is_zero()) continue;
    CHECK(m * m.inverse() == Matrix::identity(R, 3));
  }
}

TEST_CASE("sparse linear systems") {
  LinearSystem sys(3);
  sys.add({{0, 1}, {1, 1}}, 3);
  sys.add({{1, 1}, {2, -1}}, 1);
  CHECK(sys.free_unknowns() == std::vector<std::size_t>{2});
  CHECK_FALSE(sys.unique_solution());
  sys.add({{0, 2}, {2, 1}}, 5);
  auto x = sys.unique_solution();
  REQUIRE(x);
  CHECK((*x)[0] + (*x)[1] == 3);
  CHECK((*x)[1] - (*x)[2] == 1);
  CHECK(2 * (*x)[0] + (*x)[2] == 5);
  CHECK_FALSE(sys.add({{0, 1}}, 100));
  CHECK_FALSE(sys.consistent());
}

TEST_CASE("nullspace") {
  std::vector<std::vector<Rational>> rows{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  auto ns = nullspace(rows, 3);
  REQUIRE(ns.size() == 1);
  for (const auto& r : rows) {
    Rational dot = 0;
    for (int k = 0; k < 3; ++k) dot += r[k] * ns[0][k];
    CHECK(dot == 0);
  }
}
