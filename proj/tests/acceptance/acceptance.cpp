#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "app.hpp"
#include "nilshift/bfm/bfm.hpp"
#include "nilshift/peterson/peterson.hpp"
#include "nilshift/symbolic/errors.hpp"
#include "support/nilhecke_gen.hpp"

using namespace nilshift;
using testing::Gen;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::shared_ptr<const QHModule> module_of(const std::string& name) {
  return std::make_shared<const QHModule>(QHModule::build(ToricData::catalog(name)));
}

NilHeckeElement h_of(const DatumPtr& d) { return NilHeckeElement::scalar(d, RatFunc::variable(d->ring(), "h")); }

Verdict deformation() {
  Verdict v;
  auto d = RootDatum::parse("S1");
  auto z = NilHeckeElement::basis(AffineWeylElement::translation(d, {1}));
  RatFunc hu = RatFunc::variable(d->ring(), "h") + RatFunc::variable(d->ring(), "u");
  auto lhs = convolve(z, h_of(d));
  v.require(lhs == convolve(NilHeckeElement::scalar(d, hu), z), "zh != (h+u)z: " + lhs.to_string());
  v.require(lhs.to_string() == "(u + h)*e[(1);id]", "unexpected canonical form " + lhs.to_string());
  v.detail = v.pass ? "z*h = " + lhs.to_string() : v.detail;
  return v;
}

Verdict associativity() {
  Verdict v;
  Gen g(2024);
  std::size_t total = 0;
  for (const char* name : {"S1", "T2", "SU2", "SU3"}) {
    auto d = RootDatum::parse(name);
    for (int i = 0; i < 100; ++i) {
      auto x = testing::random_element(d, g), y = testing::random_element(d, g), z = testing::random_element(d, g);
      auto r = convolve(convolve(x, y), z) - convolve(x, convolve(y, z));
      v.require(r.is_zero(), std::string(name) + " residual " + r.to_string());
      ++total;
    }
  }
  if (v.pass) v.detail = std::to_string(total) + " triples, all residuals zero";
  return v;
}

Verdict demazure_calculus() {
  Verdict v;
  for (const char* name : {"SU2", "SU3"}) {
    auto d = RootDatum::parse(name);
    for (std::size_t i = 0; i < d->num_simple(); ++i) {
      v.require(convolve(demazure(d, i), demazure(d, i)).is_zero(), std::string(name) + " A_i^2 != 0");
    }
    auto e = symmetrizer(d);
    v.require(convolve(e, e) == e, std::string(name) + " e^2 != e");
  }
  auto d = RootDatum::parse("SU3");
  auto A1 = demazure(d, 0), A2 = demazure(d, 1);
  v.require(convolve(convolve(A1, A2), A1) == convolve(convolve(A2, A1), A2), "braid relation fails");
  if (v.pass) v.detail = "nil, braid and idempotency exact";
  return v;
}

Verdict spherical() {
  Verdict v;
  Gen g(77);
  std::size_t n = 0;
  for (const char* name : {"SU2", "SU3"}) {
    auto d = RootDatum::parse(name);
    for (int i = 0; i < 50; ++i) {
      auto a = symmetrize(testing::random_element(d, g, false));
      auto b = symmetrize(testing::random_element(d, g, false));
      auto r = u_reduce(convolve(a, b) - convolve(b, a));
      v.require(r.is_zero(), std::string(name) + " commutator " + r.to_string());
      ++n;
    }
  }
  if (v.pass) v.detail = std::to_string(n) + " spherical pairs commute at u=0";
  return v;
}

const std::vector<std::pair<std::string, std::string>> kCriterionSpaces{
    {"point", "T"}, {"CP1", "T"}, {"CP1", "SU2"}, {"CP2", "T"}, {"CP1xCP1", "T"}};

Verdict shift_solver(double& worst) {
  Verdict v;
  for (const auto& [name, group] : kCriterionSpaces) {
    auto t0 = std::chrono::steady_clock::now();
    auto m = module_of(name);
    auto s = solve(m, GroupAction::make(*m, group));
    auto rep = validate(s, 1, 3);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, dt);
    std::string failing;
    for (const auto& f : rep.failing()) failing += f + " ";
    v.require(rep.validated(), name + "/" + group + " fails axioms " + failing);
    v.require(rep.axioms.size() == 7, name + "/" + group + " did not run all axioms");
    v.require(dt < 300, name + " exceeded 5 min");
  }
  if (v.pass) v.detail = "5 data validated on axioms i-vii";
  return v;
}

Verdict peterson() {
  Verdict v;
  std::size_t pairs = 0;
  for (const char* name : {"CP1", "CP2", "CP1xCP1"}) {
    auto m = module_of(name);
    auto s = solve(m, GroupAction::make(*m, "T"));
    PetersonTable table;
    auto rep = peterson_homomorphism_check(s, table, 2);
    v.require(rep.passed(), std::string(name) + ": " + std::to_string(rep.failures()) + " failures");
    for (const auto& b : rep.batyrev) v.require(b.pass, std::string(name) + " image differs from Batyrev class");
    pairs += rep.products.size();
  }
  if (v.pass) v.detail = std::to_string(pairs) + " products and all Batyrev images exact";
  return v;
}

Verdict lagrangian(double& worst) {
  Verdict v;
  std::size_t n = 0;
  for (const auto& name : ToricData::catalog_names()) {
    auto t0 = std::chrono::steady_clock::now();
    auto m = module_of(name);
    auto a = GroupAction::make(*m, "T");
    std::optional<ShiftDatum> s;
    try {
      s = solve(m, a);
    } catch (const MathError&) {
      s = u0_datum(m, a);
    }
    auto mod = pontryagin_module(*s);
    auto ann = annihilator_ideal(mod);
    auto rep = certify_lagrangian(mod.space, ann.generators, graph_ideal(*s, mod.space));
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, dt);
    v.require(rep.coisotropic, name + " not coisotropic");
    v.require(rep.dimension_ok, name + " has dimension " + std::to_string(rep.krull_dimension));
    v.require(rep.graph_equal == std::optional<bool>(true), name + " differs from the graph ideal");
    v.require(dt < 300, name + " exceeded 5 min");
    ++n;
  }
  if (v.pass) v.detail = std::to_string(n) + " spaces certified and equal to their graph ideals";
  return v;
}

Verdict faults() {
  Verdict v;
  std::size_t n = 0;
  auto expect = [&](app::RunConfig c, const std::string& label, const std::function<bool(const app::Json&)>& witness) {
    auto out = app::run(c);
    const auto& r = out.report;
    bool exact = r.contains("fault") && r["fault"].value("exact", true);
    v.require(out.exit_code == app::kMathFailure, label + " exit " + std::to_string(out.exit_code));
    v.require(exact, label + " failed more than the intended check");
    v.require(witness(r), label + " has no nonzero witness");
    ++n;
  };

  for (const auto& [name, group] : std::vector<std::pair<std::string, std::string>>{
           {"CP1", "T"}, {"CP1", "SU2"}, {"CP2", "T"}}) {
    auto m = module_of(name);
    auto base = solve(m, GroupAction::make(*m, group));
    for (const auto& f : shift_faults(base)) {
      app::RunConfig c;
      c.command = "shift";
      c.space = name;
      c.group = group;
      c.fault = f.name;
      expect(c, name + "/" + group + " " + f.name, [&](const app::Json& r) {
        for (const auto& ax : r["axioms"]) {
          if (ax["id"] == f.axiom) return !ax["pass"].get<bool>() && !ax["witness"].get<std::string>().empty();
        }
        return false;
      });
    }
  }
  for (const char* f : {"not-coisotropic", "oversized", "wrong-support"}) {
    app::RunConfig c;
    c.command = "lagrangian";
    c.space = "CP2";
    c.fault = f;
    expect(c, std::string("ideal ") + f, [&](const app::Json& r) {
      std::string fault = f;
      if (fault == "not-coisotropic") {
        for (const auto& b : r["brackets"]) {
          if (!b["in_ideal"].get<bool>() && b["bracket"] != "0") return true;
        }
        return false;
      }
      if (fault == "oversized") return r["krull_dimension"] != r["half_dimension"];
      return r["graph_equal"] == false;
    });
  }
  {
    app::RunConfig c;
    c.command = "peterson";
    c.space = "CP2";
    c.fault = "q-scale";
    c.radius = 1;
    expect(c, "peterson q-scale", [](const app::Json& r) {
      const auto& bad = r["peterson"]["product_failures"];
      return !bad.empty() && bad[0]["residual"] != "0";
    });
  }
  v.require(n >= 6, "fewer than 6 faults");
  if (v.pass) v.detail = std::to_string(n) + " faults, each failing exactly its intended check (exit 1)";
  return v;
}

std::vector<app::RunConfig> suite() {
  std::vector<app::RunConfig> out;
  auto add = [&](std::string cmd, std::string space, std::string group) {
    app::RunConfig c;
    c.command = std::move(cmd);
    c.space = std::move(space);
    c.group = std::move(group);
    c.seed = 7;
    out.push_back(c);
  };
  add("algebra", "", "SU2");
  add("algebra", "", "T2");
  for (const auto& [name, group] : kCriterionSpaces) add("shift", name, group);
  add("peterson", "CP2", "T");
  add("lagrangian", "CP2", "T");
  add("lagrangian", "Bl1", "T");
  add("lagrangian", "CP1", "SU2");
  return out;
}

Verdict determinism() {
  Verdict v;
  auto dir = std::filesystem::temp_directory_path() / ("nilshift-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string a = (dir / "run1.json").string(), b = (dir / "run2.json").string();
  for (const auto& path : {a, b}) {
    std::string text;
    for (const auto& c : suite()) text += app::render(app::run(c).report);
    app::write_atomic(path, text);
  }
  auto diff = app::report_diff(a, b);
  v.require(diff.exit_code == app::kPass, "reports differ: " + diff.report.dump());
  if (v.pass) v.detail = std::to_string(suite().size()) + " reports byte-identical across two runs";
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;  // seconds
    std::function<Verdict(double&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "deformation relation", 1, [](double&) { return deformation(); }},
      {2, "convolution associativity", 60, [](double&) { return associativity(); }},
      {3, "Demazure calculus", 10, [](double&) { return demazure_calculus(); }},
      {4, "spherical commutativity", 60, [](double&) { return spherical(); }},
      {5, "shift-operator solver", 300, shift_solver},
      {6, "Peterson homomorphism", 120, [](double&) { return peterson(); }},
      {7, "Lagrangian certification", 300, lagrangian},
      {8, "fault injection", 0, [](double&) { return faults(); }},
      {9, "determinism", 0, [](double&) { return determinism(); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    double per_item = 0;  // criteria 5 and 7 are timed per space
    Verdict v;
    try {
      v = c.run(per_item);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double timed = per_item > 0 ? per_item : dt;
    if (c.limit > 0 && timed >= c.limit) {
      v.pass = false;
      v.detail += " (over time limit)";
    }
    if (!v.pass) ++failed;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", dt);
    std::cout << "criterion " << c.id << " " << (v.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << buf
              << "]  " << v.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failing") << std::endl;
  return failed == 0 ? 0 : 1;
}
