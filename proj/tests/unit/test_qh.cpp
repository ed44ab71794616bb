#include <functional>

#include "doctest.h"
#include "nilshift/qh/qh.hpp"
#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"
#include "support/gen.hpp"

using namespace nilshift;

namespace {

const QHModule& space(const std::string& name) {
  static std::map<std::string, QHModule> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, QHModule::build(ToricData::catalog(name))).first;
  return it->second;
}

// Total degree of a homogeneous polynomial, or nullopt.
std::optional<int> homogeneous_degree(const Polynomial& p) {
  if (p.is_zero()) return std::nullopt;
  std::optional<int> d;
  for (const auto& [e, c] : p.terms()) {
    int t = 0;
    for (int x : e) t += x;
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

bool has_degree(const RatFunc& f, int deg) {
  if (f.is_zero()) return true;
  auto a = homogeneous_degree(f.num()), b = homogeneous_degree(f.den());
  return a && b && *a - *b == deg;
}

RatFunc rf(const QHModule& m, const std::string& s) { return parse_ratfunc(s, m.coeff_ring()); }

Vec scale(const Vec& v, const RatFunc& c) {
  Vec out(v);
  for (auto& x : out) x *= c;
  return out;
}

Vec sub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.is_zero(); });
}

}  // namespace

TEST_CASE("CP1 presentation and products") {
  const auto& m = space("CP1");
  REQUIRE(m.relations().size() == 1);
  CHECK(m.relations()[0] == parse_polynomial("q*z^2 + h*z - q", m.presentation().ring()));
  CHECK(m.rank() == 2);
  // D1 - D0 = h and D0 * D1 = q^2.
  CHECK(sub(m.divisor(1), m.divisor(0)) == scale(m.unit(), rf(m, "h")));
  CHECK(m.mul(m.divisor(0), m.divisor(1)) == scale(m.unit(), rf(m, "q^2")));
  // c1 = 2 D1 - h
  CHECK(m.c1() == sub(scale(m.divisor(1), rf(m, "2")), scale(m.unit(), rf(m, "h"))));
  CHECK(m.mul(m.z_class({1}), m.z_class({-1})) == m.unit());
  CHECK(m.z_class({1}) == scale(m.divisor(0), rf(m, "1/q")));
  CHECK(m.fixed_point_decompose(m.unit()) == Vec{rf(m, "1"), rf(m, "1")});
  CHECK(m.fixed_point_decompose(m.divisor(1)) == Vec{rf(m, "0"), rf(m, "h")});
  CHECK(m.fixed_point_decompose(m.divisor(0)) == Vec{rf(m, "-h"), rf(m, "0")});
}

TEST_CASE("point") {
  const auto& m = space("point");
  CHECK(m.rank() == 1);
  CHECK(m.relations().empty());
  CHECK(m.mul(m.unit(), m.unit()) == m.unit());
  CHECK(m.fixed_point_decompose(m.unit()) == m.unit());
  CHECK(is_zero(m.c1()));
  CHECK(m.z_class({}) == m.unit());
}

TEST_CASE("CP2 quantum relation") {
  const auto& m = space("CP2");
  CHECK(m.rank() == 3);
  auto H = m.divisor(0);
  auto H3 = m.mul(H, m.mul(H, H));
  Vec at0(H3.size());
  for (std::size_t i = 0; i < H3.size(); ++i) {
    at0[i] = H3[i].evaluate(m.h_index(0), 0).evaluate(m.h_index(1), 0);
  }
  CHECK(at0 == scale(m.unit(), rf(m, "q^3")));
  // All three divisors agree at h = 0.
  for (std::size_t rho = 1; rho < 3; ++rho) {
    auto d = m.divisor(rho);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i].evaluate(m.h_index(0), 0).evaluate(m.h_index(1), 0) ==
            H[i].evaluate(m.h_index(0), 0).evaluate(m.h_index(1), 0));
    }
  }
}

TEST_CASE("structure constants: associativity, commutativity, unit, grading") {
  for (const auto& name : ToricData::catalog_names()) {
    CAPTURE(name);
    const auto& m = space(name);
    const std::size_t n = m.rank();
    CHECK(n == m.toric().num_fixed_points());
    CHECK(m.structure_matrix(0) == Matrix::identity(m.coeff_ring(), n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(m.structure_matrix(i) * m.structure_matrix(j) == m.structure_matrix(j) * m.structure_matrix(i));
        Vec bij = m.mul(m.basis_vector(i), m.basis_vector(j));
        CHECK(m.mul_matrix(bij) == m.structure_matrix(i) * m.structure_matrix(j));
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(has_degree(bij[k], m.degree(i) + m.degree(j) - m.degree(k)));
        }
      }
    }
  }
}

TEST_CASE("classical limit") {
  for (const auto& name : ToricData::catalog_names()) {
    CAPTURE(name);
    const auto& m = space(name);
    const std::size_t n = m.rank();
    const std::size_t r = m.lattice_rank();
    auto at_q0 = [&](const RatFunc& f) { return f.evaluate(m.q_index(), 0); };
    // Localization at q = 0: restriction is a ring map on classical products.
    const auto& R = m.restriction_matrix();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Vec prod = m.fixed_point_decompose(m.mul(m.basis_vector(i), m.basis_vector(j)));
        for (std::size_t p = 0; p < n; ++p) CHECK(at_q0(prod[p]) == R(p, i) * R(p, j));
      }
    }
    // Degree-2 classes are nilpotent at q = 0, h = 0.
    Matrix C = m.c1_matrix().map([&](const RatFunc& f) {
      RatFunc g = at_q0(f);
      for (std::size_t k = 0; k < r; ++k) g = g.evaluate(m.h_index(k), 0);
      return g;
    });
    Matrix P = Matrix::identity(m.coeff_ring(), n);
    for (std::size_t k = 0; k <= r; ++k) P = P * C;
    CHECK(P.is_zero());
  }
}

TEST_CASE("Jacobian consistency against hand-entered ideals") {
  struct Case {
    const char* name;
    std::vector<const char*> gens;
  };
  // -z_i dW/dz_i - h_i for W = q * sum z^v, written out by hand.
  std::vector<Case> cases = {
      {"CP1", {"-q*z + q/z - h"}},
      {"CP2", {"-q*z1 + q/(z1*z2) - h1", "-q*z2 + q/(z1*z2) - h2"}},
      {"CP1xCP1", {"-q*z1 + q/z1 - h1", "-q*z2 + q/z2 - h2"}},
      {"CP3", {"-q*z1 + q/(z1*z2*z3) - h1", "-q*z2 + q/(z1*z2*z3) - h2", "-q*z3 + q/(z1*z2*z3) - h3"}},
      {"Bl1", {"-q*z1 + q*z2/z1 - h1", "-q*z2 - q*z2/z1 + q/z2 - h2"}},
      {"Bl2", {"-q*z1 + q/z1 + q/(z1*z2) - h1", "-q*z2 + q/(z1*z2) + q/z2 - h2"}},
  };
  for (const auto& c : cases) {
    CAPTURE(std::string(c.name));
    const auto& m = space(c.name);
    std::vector<Polynomial> hand;
    for (const char* g : c.gens) hand.push_back(parse_polynomial(g, m.presentation().ring()));
    CHECK(ideals_equal(IdealPresentation(m.presentation().ring(), hand), m.presentation()));
    for (const auto& g : hand) CHECK(is_zero(m.coords(g)));
  }
}

TEST_CASE("Bl3 Jacobian ideal matches the hexagon potential") {
  const auto& m = space("Bl3");
  // Rays (1,0),(0,1),(-1,1),(-1,0),(0,-1),(1,-1).
  std::vector<Polynomial> hand;
  for (const char* g : {"-q*z1 + q*z2/z1 + q/z1 - q*z1/z2 - h1", "-q*z2 - q*z2/z1 + q/z2 + q*z1/z2 - h2"}) {
    hand.push_back(parse_polynomial(g, m.presentation().ring()));
  }
  CHECK(ideals_equal(IdealPresentation(m.presentation().ring(), hand), m.presentation()));
}

TEST_CASE("connection") {
  const auto& m = space("CP2");
  auto neg_c1 = scale(m.c1(), rf(m, "-1"));
  CHECK(m.connection_apply(m.unit()) == neg_c1);
  auto qunit = scale(m.unit(), rf(m, "q"));
  CHECK(m.connection_apply(qunit) == sub(scale(m.unit(), rf(m, "u*q")), scale(m.c1(), rf(m, "q"))));
  const auto& c = space("CP1");
  auto x = c.divisor(1);
  CHECK(c.connection_apply(x) == scale(c.mul(c.c1(), x), rf(c, "-1")));
}

TEST_CASE("fixed points") {
  testing::Gen g(21);
  for (const auto& name : ToricData::catalog_names()) {
    CAPTURE(name);
    const auto& m = space(name);
    Vec ones(m.rank(), rf(m, "1"));
    CHECK(m.fixed_point_decompose(m.unit()) == ones);
    std::vector<std::size_t> vars{m.u_index(), m.q_index()};
    for (std::size_t k = 0; k < m.lattice_rank(); ++k) vars.push_back(m.h_index(k));
    for (int t = 0; t < 3; ++t) {
      Vec y(m.rank());
      for (auto& x : y) x = RatFunc(g.poly(m.coeff_ring(), vars, 2, 2));
      CHECK(m.fixed_point_recompose(m.fixed_point_decompose(y)) == y);
    }
    // c1 restricts to the sum of tangent weights.
    Vec c1p = m.fixed_point_decompose(m.c1());
    for (std::size_t p = 0; p < m.rank(); ++p) {
      RatFunc s(m.coeff_ring());
      for (const auto& w : m.toric().tangent_weights(p)) s += m.datum()->character_poly(w).embed(m.coeff_ring());
      CHECK(c1p[p] == s);
    }
  }
  // Under h -> -h with the fixed points swapped, c1 of CP1 is invariant.
  const auto& c = space("CP1");
  Vec v = c.fixed_point_decompose(c.c1());
  CHECK(v[0].substitute({{c.h_index(0), rf(c, "-h")}}) == v[1]);
}

TEST_CASE("fan validation and files") {
  ToricData f2;
  f2.name = "F2";
  f2.rank = 2;
  f2.rays = {{1, 0}, {0, 1}, {-1, 2}, {0, -1}};
  f2.cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  CHECK(f2.is_smooth());
  CHECK(f2.is_complete());
  CHECK_FALSE(f2.is_monotone());
  CHECK_THROWS_AS(QHModule::build(f2), MathError);
  ToricData half = ToricData::catalog("CP2");
  half.cones.pop_back();
  CHECK_FALSE(half.is_complete());
  ToricData sing = ToricData::catalog("CP2");
  sing.rays[2] = {-1, -2};
  CHECK_FALSE(sing.is_smooth());
  CHECK_THROWS_AS(ToricData::parse("rank 2\nray 1\n"), ParseError);
  CHECK_THROWS_AS(ToricData::parse("ray 1 0\n"), ParseError);
  CHECK_THROWS_AS(ToricData::parse("rank 1\nbogus\n"), ParseError);
  for (const auto& name : ToricData::catalog_names()) {
    auto t = ToricData::catalog(name);
    CHECK_NOTHROW(t.validate());
    auto back = ToricData::parse(t.to_text());
    CHECK(back.rays == t.rays);
    CHECK(back.cones == t.cones);
  }
  for (const char* file : {"CP1", "CP2", "dP6"}) {
    auto t = ToricData::load(std::string(NILSHIFT_DATA_DIR) + "/fans/" + file + ".fan");
    CHECK_NOTHROW(t.validate());
  }
  auto dp6 = QHModule::build(ToricData::load(std::string(NILSHIFT_DATA_DIR) + "/fans/dP6.fan"));
  CHECK(dp6.rank() == 6);
  CHECK(dp6.toric().rays[dp6.toric().cones[0][0]] == std::vector<int>{1, 0});
  CHECK(dp6.toric().rays[dp6.toric().cones[0][1]] == std::vector<int>{0, 1});
}
