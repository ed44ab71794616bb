#include "app.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "nilshift/bfm/bfm.hpp"
#include "nilshift/peterson/peterson.hpp"
#include "nilshift/symbolic/errors.hpp"

namespace nilshift::app {

namespace {

// Raw mt19937_64 output is fixed by the standard, so reduction by modulus is portable.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}
  int range(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational() {
    Rational r(range(-5, 5), range(1, 5));
    r.canonicalize();
    return r;
  }
  Polynomial poly(const DatumPtr& d, int terms, int maxdeg) {
    Polynomial p(d->ring());
    for (int t = 0; t < terms; ++t) {
      Exponent e(d->ring()->size(), 0);
      e[d->u_index()] = range(0, maxdeg);
      for (std::size_t k = 0; k < d->rank(); ++k) e[d->h_index(k)] = range(0, maxdeg);
      p.add_term(e, rational());
    }
    return p;
  }
  AffineWeylElement affine(const DatumPtr& d) {
    const auto& W = d->weyl_elements();
    std::vector<int> s(d->rank());
    for (auto& x : s) x = range(-1, 1);
    return AffineWeylElement(d, s, W[static_cast<std::size_t>(range(0, static_cast<int>(W.size()) - 1))]);
  }
  NilHeckeElement element(const DatumPtr& d, bool allow_den) {
    NilHeckeElement x(d);
    int n = range(1, 2);
    for (int t = 0; t < n; ++t) {
      RatFunc c(poly(d, 2, 2));
      if (allow_den && range(0, 3) == 0) {
        c = c / (RatFunc::variable(d->ring(), "u") + RatFunc::variable(d->ring(), d->h_name(0)));
      }
      x.add_term(affine(d), c);
    }
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

Json header(const RunConfig& c) {
  Json j;
  j["conventions"] = conventions();
  j["command"] = c.command;
  return j;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

Json lines(const std::string& text) {
  Json a = Json::array();
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) a.push_back(l);
  return a;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(f.to_string());
  return a;
}

DatumPtr parse_group(const std::string& g) {
  try {
    return RootDatum::parse(g);
  } catch (const Error& e) {
    throw ConfigError("bad group '" + g + "': " + e.what());
  }
}

std::shared_ptr<const QHModule> load_module(const RunConfig& c) {
  ToricData fan;
  try {
    fan = c.fan.empty() ? ToricData::catalog(c.space) : ToricData::load(c.fan);
    fan.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("cannot load space: ") + e.what());
  }
  return std::make_shared<const QHModule>(QHModule::build(fan, c.budget));
}

GroupAction make_action(const RunConfig& c, const QHModule& m) {
  std::string g = c.group;
  if (c.rank >= 0) {
    if (m.lattice_rank() != 0) throw ConfigError("--rank applies only to the point");
    if (g != "T") throw ConfigError("--rank requires --group T");
    g = "T" + std::to_string(c.rank);
  }
  try {
    return GroupAction::make(m, g);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Json space_json(const QHModule& m, const GroupAction& a) {
  Json j;
  j["name"] = m.name();
  j["group"] = a.describe();
  return j;
}

// A stored datum, a solved datum, or (when the solver finds no q-flat operators) the u=0 datum.
struct Obtained {
  std::optional<ShiftDatum> datum;
  std::string source;
  std::string note;
};

Obtained obtain(const RunConfig& c, const std::shared_ptr<const QHModule>& m, const GroupAction& a, bool allow_u0) {
  Obtained o;
  if (!c.datum_in.empty()) {
    std::string text = read_file(c.datum_in);
    try {
      o.datum = ShiftDatum::deserialize(m, a, text);
    } catch (const ParseError& e) {
      throw ConfigError(c.datum_in + ": " + e.what());
    }
    o.source = "loaded";
    return o;
  }
  SolveOptions opts;
  opts.widen = c.widen;
  opts.budget = c.solve_budget;
  try {
    o.datum = solve(m, a, opts);
    o.source = "solved";
  } catch (const BudgetExhausted&) {
    throw;
  } catch (const MathError& e) {
    if (!allow_u0) throw;
    o.datum = u0_datum(m, a);
    o.source = "u=0 multiplication by Batyrev elements";
    o.note = e.what();
  }
  return o;
}

Json peterson_json(const PetersonReport& r, const PetersonTable& t, std::size_t rank, int radius) {
  Json j;
  j["radius"] = radius;
  j["pairs"] = r.products.size();
  Json bad = Json::array();
  for (const auto& e : r.products) {
    if (e.pass) continue;
    bad.push_back({{"sigma1", format_cocharacter(e.sigma1)},
                   {"sigma2", format_cocharacter(e.sigma2)},
                   {"residual", e.residual}});
  }
  j["product_failures"] = bad;
  Json bat = Json::array();
  for (const auto& e : r.batyrev) {
    bat.push_back({{"sigma", format_cocharacter(e.sigma1)}, {"pass", e.pass}, {"residual", e.residual}});
  }
  j["batyrev"] = bat;
  Json images;
  for (std::size_t k = 0; k < rank; ++k) {
    for (int sgn : {1, -1}) {
      std::vector<int> s(rank, 0);
      s[k] = sgn;
      auto it = t.find(s);
      if (it != t.end()) images[format_cocharacter(s)] = vec_json(it->second);
    }
  }
  j["images"] = images;
  j["passed"] = r.passed();
  return j;
}

Json axioms_json(const AxiomReport& r) {
  Json a = Json::array();
  for (const auto& x : r.axioms) {
    a.push_back({{"id", x.id}, {"name", x.name}, {"pass", x.pass}, {"checks", x.checks}, {"witness", x.witness}});
  }
  return a;
}

// Ideals that break exactly one Lagrangian check on a torus of rank r >= 2.
std::vector<Polynomial> ideal_fault(const std::string& name, const BFMSpace& space, std::size_t r) {
  auto z = [&](std::size_t k) { return Polynomial::variable(space.ring(), "z" + std::to_string(k)); };
  auto h = [&](std::size_t k) { return Polynomial::variable(space.ring(), "h" + std::to_string(k)); };
  Polynomial one(space.ring(), 1);
  std::vector<Polynomial> g;
  if (name == "not-coisotropic") {
    g = {h(1), z(1) - one};
    for (std::size_t k = 3; k <= r; ++k) g.push_back(z(k) - one);
  } else if (name == "oversized") {
    g = {h(1)};
    for (std::size_t k = 3; k <= r; ++k) g.push_back(z(k) - one);
  } else if (name == "wrong-support") {
    for (std::size_t k = 1; k <= r; ++k) g.push_back(z(k) - one);
  } else {
    throw ConfigError("unknown lagrangian fault '" + name + "' (not-coisotropic, oversized, wrong-support)");
  }
  return g;
}

std::string intended_check(const std::string& fault) {
  if (fault == "not-coisotropic") return "coisotropic";
  if (fault == "oversized") return "dimension";
  return "graph";
}

}  // namespace

Json conventions() {
  Json j;
  j["twist"] = "A_{sigma[w]}: h_lambda -> h_{w lambda} + eps <w lambda, sigma> u";
  j["eps"] = 1;
  j["connection"] = "u q d/dq - c1 *";
  j["dictionary"] = "h_T = -iota(h_G)";
  j["q_normalization"] = "monotone: deg q = 2, one q per unit of c1";
  return j;
}

Outcome cmd_algebra(const RunConfig& c) {
  DatumPtr d = parse_group(c.group);
  Sampler g(c.seed);
  Outcome out{kPass, header(c)};
  out.report["group"] = d->name();
  out.report["seed"] = c.seed;
  Json checks = Json::array();
  bool ok = true;
  auto add = [&](Json j) {
    ok = ok && j["pass"].get<bool>();
    checks.push_back(std::move(j));
  };

  RatFunc u = RatFunc::variable(d->ring(), "u");
  for (std::size_t k = 0; k < d->rank(); ++k) {
    std::vector<int> e(d->rank(), 0);
    e[k] = 1;
    auto t = NilHeckeElement::basis(AffineWeylElement::translation(d, e));
    std::string tn = d->rank() == 1 ? "z" : "z" + std::to_string(k + 1);
    for (std::size_t j = 0; j < d->rank(); ++j) {
      std::vector<int> chi(d->rank(), 0);
      chi[j] = 1;
      RatFunc hj = RatFunc::variable(d->ring(), d->h_name(j));
      RatFunc shifted = hj + Rational(d->pairing(chi, e)) * u;
      auto lhs = convolve(t, NilHeckeElement::scalar(d, hj));
      auto rhs = convolve(NilHeckeElement::scalar(d, shifted), t);
      add({{"check", "deformation"},
           {"relation", tn + "*" + d->h_name(j) + " = (" + shifted.to_string() + ")*" + tn},
           {"pass", lhs == rhs},
           {"witness", (lhs - rhs).to_string()}});
    }
  }

  {
    int fails = 0;
    std::string witness = "0";
    for (int i = 0; i < c.samples; ++i) {
      auto x = g.element(d, true), y = g.element(d, true), z = g.element(d, true);
      auto r = convolve(convolve(x, y), z) - convolve(x, convolve(y, z));
      if (!r.is_zero() && fails++ == 0) witness = r.to_string();
    }
    add({{"check", "associativity"}, {"samples", c.samples}, {"failures", fails}, {"pass", fails == 0},
         {"witness", witness}});
  }

  for (std::size_t i = 0; i < d->num_simple(); ++i) {
    auto A = demazure(d, i);
    auto sq = convolve(A, A);
    add({{"check", "nil"}, {"relation", "A" + std::to_string(i + 1) + "^2 = 0"}, {"pass", sq.is_zero()},
         {"witness", sq.to_string()}});
  }
  for (std::size_t i = 0; i < d->num_simple(); ++i) {
    for (std::size_t j = i + 1; j < d->num_simple(); ++j) {
      auto si = AffineWeylElement::simple_reflection(d, i), sj = AffineWeylElement::simple_reflection(d, j);
      int m = 1;
      for (auto p = si * sj; !p.is_identity(); p = p * si * sj) ++m;
      auto Ai = demazure(d, i), Aj = demazure(d, j);
      NilHeckeElement l = NilHeckeElement::one(d), r = NilHeckeElement::one(d);
      std::string ln, rn;
      for (int k = 0; k < m; ++k) {
        bool even = k % 2 == 0;
        l = convolve(l, even ? Ai : Aj);
        r = convolve(r, even ? Aj : Ai);
        ln += "A" + std::to_string((even ? i : j) + 1);
        rn += "A" + std::to_string((even ? j : i) + 1);
      }
      add({{"check", "braid"}, {"relation", ln + " = " + rn}, {"pass", l == r}, {"witness", (l - r).to_string()}});
    }
  }

  auto e = symmetrizer(d);
  auto ee = convolve(e, e);
  add({{"check", "symmetrizer"}, {"relation", "e^2 = e"}, {"pass", ee == e}, {"witness", (ee - e).to_string()}});

  {
    int n = c.samples / 2, fails = 0;
    std::string witness = "0";
    for (int i = 0; i < n; ++i) {
      auto a = symmetrize(g.element(d, false)), b = symmetrize(g.element(d, false));
      auto r = u_reduce(convolve(a, b) - convolve(b, a));
      if (!r.is_zero() && fails++ == 0) witness = r.to_string();
    }
    add({{"check", "spherical commutativity at u=0"}, {"samples", n}, {"failures", fails}, {"pass", fails == 0},
         {"witness", witness}});
  }

  out.report["checks"] = checks;
  out.report["passed"] = ok;
  out.exit_code = ok ? kPass : kMathFailure;
  return out;
}

Outcome cmd_shift(const RunConfig& c) {
  auto m = load_module(c);
  GroupAction a = make_action(c, *m);
  Outcome out{kPass, header(c)};
  out.report["space"] = space_json(*m, a);
  out.report["seed"] = c.seed;
  out.report["widen"] = c.widen;
  Obtained o = obtain(c, m, a, false);
  const ShiftDatum& s = *o.datum;
  if (!c.datum_out.empty()) write_atomic(c.datum_out, s.serialize());

  const ShiftDatum* target = &s;
  std::vector<ShiftFault> faults;
  const ShiftFault* fault = nullptr;
  if (!c.fault.empty()) {
    faults = shift_faults(s);
    std::string names;
    for (const auto& f : faults) {
      names += (names.empty() ? "" : ", ") + f.name;
      if (f.name == c.fault) fault = &f;
    }
    if (!fault) throw ConfigError("unknown shift fault '" + c.fault + "' for this space (" + names + ")");
    target = &fault->datum;
  }
  AxiomReport rep = validate(*target, c.seed, c.max_word);
  out.report["datum"] = lines(target->serialize());
  out.report["axioms"] = axioms_json(rep);
  out.report["validated"] = rep.validated();
  bool ok = rep.validated();
  if (fault) {
    auto failing = rep.failing();
    out.report["fault"] = {{"name", fault->name},
                           {"intended", fault->axiom},
                           {"failing", strings(failing)},
                           {"exact", failing == std::vector<std::string>{fault->axiom}}};
  } else if (ok) {
    PetersonTable table;
    auto pr = peterson_homomorphism_check(s, table, c.radius);
    out.report["peterson"] = peterson_json(pr, table, s.group()->rank(), c.radius);
    ok = pr.passed();
  }
  out.report["passed"] = ok;
  out.exit_code = ok ? kPass : kMathFailure;
  return out;
}

Outcome cmd_peterson(const RunConfig& c) {
  auto m = load_module(c);
  GroupAction a = make_action(c, *m);
  Outcome out{kPass, header(c)};
  out.report["space"] = space_json(*m, a);
  Obtained o = obtain(c, m, a, true);
  const ShiftDatum& s = *o.datum;
  out.report["datum_source"] = o.source;
  if (!o.note.empty()) out.report["solver_note"] = o.note;
  PetersonTable table;
  if (!c.fault.empty()) {
    if (c.fault != "q-scale") throw ConfigError("unknown peterson fault '" + c.fault + "' (q-scale)");
    if (s.group()->rank() == 0) throw ConfigError("q-scale needs a group of positive rank");
    std::vector<int> e(s.group()->rank(), 0);
    e[0] = 1;
    Vec img = peterson_eval(s, e).image;
    RatFunc q = RatFunc::variable(s.ring(), "q");
    for (auto& f : img) f = f * q;
    table[e] = img;
    out.report["fault"] = {{"name", c.fault}, {"sigma", format_cocharacter(e)}};
  }
  auto pr = peterson_homomorphism_check(s, table, c.radius);
  out.report["peterson"] = peterson_json(pr, table, s.group()->rank(), c.radius);
  if (!c.fault.empty()) out.report["fault"]["failures"] = pr.failures();
  out.report["passed"] = pr.passed();
  out.exit_code = pr.passed() ? kPass : kMathFailure;
  return out;
}

Outcome cmd_lagrangian(const RunConfig& c) {
  auto m = load_module(c);
  GroupAction a = make_action(c, *m);
  Outcome out{kPass, header(c)};
  out.report["space"] = space_json(*m, a);
  Obtained o = obtain(c, m, a, true);
  const ShiftDatum& s = *o.datum;
  out.report["datum_source"] = o.source;
  if (!o.note.empty()) out.report["solver_note"] = o.note;

  PontryaginModule mod = pontryagin_module(s);
  Json action;
  for (std::size_t v = 0; v < mod.action.size(); ++v) action[mod.space.ring()->name(v)] = mod.action[v].to_string();
  out.report["module"] = {{"bfm_space", mod.space.name()}, {"rank", mod.rank}, {"action", action}};

  bool full_torus = s.group()->num_simple() == 0 && s.group()->rank() == m->lattice_rank();
  std::vector<Polynomial> gens;
  std::optional<IdealPresentation> graph;
  if (!c.fault.empty()) {
    if (!full_torus || s.group()->rank() < 2) throw ConfigError("lagrangian faults need a torus of rank >= 2");
    gens = ideal_fault(c.fault, mod.space, s.group()->rank());
    if (c.fault == "wrong-support") graph = graph_ideal(s, mod.space);
  } else {
    AnnihilatorResult ann = annihilator_ideal(mod, KernelWindow{}, c.budget);
    gens = ann.generators;
    out.report["operator_degree"] = ann.operator_degree;
    if (full_torus) graph = graph_ideal(s, mod.space);
  }
  LagrangianReport rep = certify_lagrangian(mod.space, gens, graph, c.budget);
  Json br = Json::array();
  for (const auto& b : rep.brackets) {
    br.push_back({{"pair", {b.a, b.b}}, {"bracket", b.bracket}, {"in_ideal", b.in_ideal}});
  }
  out.report["ideal"] = strings(rep.generators);
  out.report["krull_dimension"] = rep.krull_dimension;
  out.report["half_dimension"] = rep.half_dimension;
  out.report["brackets"] = br;
  out.report["coisotropic"] = rep.coisotropic;
  out.report["dimension_ok"] = rep.dimension_ok;
  out.report["graph_equal"] = rep.graph_equal ? Json(*rep.graph_equal) : Json(nullptr);
  out.report["certified"] = rep.certified();
  auto failing = rep.failing();
  out.report["failing"] = strings(failing);
  if (!c.fault.empty()) {
    out.report["fault"] = {{"name", c.fault},
                           {"intended", intended_check(c.fault)},
                           {"exact", failing == std::vector<std::string>{intended_check(c.fault)}}};
  }
  bool ok = failing.empty();
  out.report["passed"] = ok;
  out.exit_code = ok ? kPass : kMathFailure;
  return out;
}

Outcome run(const RunConfig& c) {
  try {
    if (c.command == "algebra") return cmd_algebra(c);
    if (c.command == "shift") return cmd_shift(c);
    if (c.command == "peterson") return cmd_peterson(c);
    if (c.command == "lagrangian") return cmd_lagrangian(c);
    throw ConfigError("unknown command '" + c.command + "'");
  } catch (const BudgetExhausted& e) {
    Outcome out{kBudgetExhausted, header(c)};
    out.report["error"] = {{"kind", "budget"}, {"stage", e.stage()}, {"budget", e.budget()}, {"message", e.what()}};
    out.report["passed"] = false;
    return out;
  } catch (const MathError& e) {
    Outcome out{kMathFailure, header(c)};
    out.report["error"] = {{"kind", "math"}, {"message", e.what()}};
    out.report["passed"] = false;
    return out;
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const MismatchError& e) {
    throw ConfigError(e.what());
  }
}

Outcome report_diff(const std::string& a, const std::string& b) {
  std::string ta = read_file(a), tb = read_file(b);
  Outcome out;
  out.report["command"] = "report diff";
  out.report["a"] = a;
  out.report["b"] = b;
  out.report["identical"] = ta == tb;
  if (ta != tb) {
    std::istringstream ia(ta), ib(tb);
    std::string la, lb;
    std::size_t line = 0;
    while (true) {
      bool ga = static_cast<bool>(std::getline(ia, la)), gb = static_cast<bool>(std::getline(ib, lb));
      ++line;
      if (!ga) la = "<end of file>";
      if (!gb) lb = "<end of file>";
      if (la != lb || (!ga && !gb)) break;
    }
    out.report["first_difference"] = {{"line", line}, {"a", la}, {"b", lb}};
    out.exit_code = kMathFailure;
  }
  return out;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp);
    f << text;
    if (!f.flush()) throw ConfigError("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace nilshift::app
