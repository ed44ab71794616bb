#include <map>

#include "doctest.h"
#include "nilshift/peterson/peterson.hpp"
#include "nilshift/symbolic/errors.hpp"

using namespace nilshift;

namespace {

ShiftDatum solved(const std::string& name, const std::string& group) {
  auto m = std::make_shared<const QHModule>(QHModule::build(ToricData::catalog(name)));
  return solve(m, GroupAction::make(*m, group));
}

}  // namespace

TEST_CASE("Peterson images of small co-characters on CP1") {
  auto s = solved("CP1", "T");
  auto zero = peterson_eval(s, {0});
  CHECK(zero.image == s.unit());
  auto p = peterson_eval(s, {1});
  CHECK(s.mul(p.image, p.inverse) == s.unit());
  CHECK(p.image == s.pull(s.module().z_class({1})));
  // The image of σ+ is z = D0/q, coordinates (-h_T/q, 1/q) in the basis {1, D1}.
  RatFunc q = RatFunc::variable(s.ring(), "q"), h = RatFunc::variable(s.ring(), "h");
  CHECK(p.image == Vec{h / q, q.inverse()});
}

TEST_CASE("homomorphism property on the criterion spaces") {
  for (auto [name, group] : std::vector<std::pair<std::string, std::string>>{
           {"CP1", "T"}, {"CP1", "SU2"}, {"CP2", "T"}, {"CP1xCP1", "T"}}) {
    CAPTURE(name);
    CAPTURE(group);
    auto s = solved(name, group);
    PetersonTable table;
    auto rep = peterson_homomorphism_check(s, table, 2);
    CHECK(rep.passed());
    std::size_t side = 5;
    std::size_t box = s.group()->rank() == 1 ? side : side * side;
    CHECK(rep.products.size() == box * box);
    // Integral statement: the images have no denominators in h.
    for (const auto& [sigma, img] : table) {
      for (const auto& c : img) CHECK(c.is_polynomial());
    }
  }
}

TEST_CASE("scaling one image by q is detected with a residual") {
  auto s = solved("CP2", "T");
  PetersonTable table;
  auto good = peterson_homomorphism_check(s, table, 1);
  REQUIRE(good.passed());
  for (auto& c : table.at({1, 0})) c *= RatFunc::variable(s.ring(), "q");
  auto bad = peterson_homomorphism_check(s, table, 1);
  CHECK_FALSE(bad.passed());
  bool found = false;
  for (const auto& e : bad.products) {
    if (!e.pass) {
      found = true;
      CHECK(e.residual != "0");
    }
  }
  CHECK(found);
}

TEST_CASE("u=0 data give Peterson homomorphisms on every catalog space") {
  for (const auto& name : ToricData::catalog_names()) {
    CAPTURE(name);
    auto m = std::make_shared<const QHModule>(QHModule::build(ToricData::catalog(name)));
    if (m->lattice_rank() > 2) continue;
    auto s = u0_datum(m, GroupAction::make(*m, "T"));
    PetersonTable table;
    CHECK(peterson_homomorphism_check(s, table, 1).passed());
  }
}

TEST_CASE("a pole at u=0 is reported") {
  auto s = solved("CP1", "T");
  for (const auto& f : shift_faults(s)) {
    if (f.name != "u-scaled") continue;
    CHECK_THROWS_AS(peterson_eval(f.datum, {1}), MathError);
  }
}

TEST_CASE("lattice box enumeration") {
  CHECK(lattice_box(0, 2).size() == 1);
  CHECK(lattice_box(1, 2).size() == 5);
  CHECK(lattice_box(2, 1).size() == 9);
  CHECK(lattice_box(2, 1).front() == std::vector<int>{-1, -1});
}
