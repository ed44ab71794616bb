#include "nilshift/shift/shift.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"

namespace nilshift {

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::size_t> ray_permutation(const ToricData& fan, const IntMatrix& g) {
  std::vector<std::size_t> out;
  for (const auto& v : fan.rays) {
    std::vector<int> image = g * v;
    auto it = std::find(fan.rays.begin(), fan.rays.end(), image);
    if (it == fan.rays.end()) throw MismatchError("lattice map does not preserve the fan rays");
    out.push_back(static_cast<std::size_t>(it - fan.rays.begin()));
  }
  return out;
}

std::vector<std::size_t> cone_permutation(const ToricData& fan, const IntMatrix& g) {
  auto rays = ray_permutation(fan, g);
  std::vector<std::size_t> perm;
  for (const auto& cone : fan.cones) {
    std::vector<std::size_t> image;
    for (auto r : cone) image.push_back(rays[r]);
    std::sort(image.begin(), image.end());
    std::size_t found = fan.cones.size();
    for (std::size_t p = 0; p < fan.cones.size(); ++p) {
      auto c = fan.cones[p];
      std::sort(c.begin(), c.end());
      if (c == image) found = p;
    }
    if (found == fan.cones.size()) throw MismatchError("lattice map does not preserve the fan cones");
    perm.push_back(found);
  }
  return perm;
}

std::string entry_witness(const std::string& what, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) {
        return what + " entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + m(i, j).to_string();
      }
    }
  }
  return {};
}

// Monomials of total degree d in the variables idx.
void monomials_of_degree(const std::vector<std::size_t>& idx, std::size_t nvars, int d,
                         std::vector<Exponent>& out) {
  Exponent e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == idx.size()) {
      e[idx[k]] = left;
      out.push_back(e);
      e[idx[k]] = 0;
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[idx[k]] = a;
      rec(k + 1, left - a);
    }
    e[idx[k]] = 0;
  };
  if (d < 0) return;
  if (idx.empty()) {
    if (d == 0) out.push_back(e);
    return;
  }
  rec(0, d);
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  Polynomial g = gcd(a, b);
  return *divide_exact(a * b, g);
}

}  // namespace

// ---------------------------------------------------------------- GroupAction

std::vector<int> GroupAction::apply_iota(const std::vector<int>& sigma) const {
  std::vector<int> out(iota.size(), 0);
  for (std::size_t k = 0; k < iota.size(); ++k) {
    for (std::size_t j = 0; j < sigma.size(); ++j) out[k] += iota[k][j] * sigma[j];
  }
  return out;
}

GroupAction GroupAction::make(const QHModule& m, const std::string& group) {
  GroupAction a;
  std::size_t r = m.lattice_rank();
  if (group == "T") {
    a.group = m.datum();
    for (std::size_t k = 0; k < r; ++k) {
      a.iota.emplace_back(r, 0);
      a.iota[k][k] = 1;
    }
    return a;
  }
  if (group == "SU2") {
    if (r != 1) throw MismatchError("SU2 acts only on rank-one targets (CP1), not on " + m.name());
    a.group = RootDatum::parse("SU2");
    // The maximal torus of SU(2) acts on CP1 through its double cover quotient: ι = 2.
    a.iota = {{2}};
    IntMatrix g(1);
    g(0, 0) = -1;
    a.weyl_lattice.push_back(g);
    a.weyl_perm.push_back(cone_permutation(m.toric(), g));
    return a;
  }
  // A point carries the trivial action of any torus.
  if (r == 0 && group.size() > 1 && group[0] == 'T' &&
      std::all_of(group.begin() + 1, group.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    a.group = RootDatum::parse(group);
    return a;
  }
  throw MismatchError("unknown group '" + group + "' (expected T, SU2, or Tr on a point)");
}

std::string GroupAction::describe() const {
  std::string s = group->name() + " via iota=[";
  for (std::size_t k = 0; k < iota.size(); ++k) s += (k ? ";" : "") + join(iota[k]);
  return s + "]";
}

// ---------------------------------------------------------------- Operator

Vec Operator::apply(const Vec& y) const {
  Vec t;
  t.reserve(y.size());
  for (const auto& c : y) t.push_back(twist(c));
  return matrix * t;
}

Operator Operator::then(const Operator& inner) const {
  Matrix m = matrix * inner.matrix.map([&](const RatFunc& f) { return twist(f); });
  return Operator{m, twist.compose(inner.twist)};
}

// ---------------------------------------------------------------- AxiomReport

bool AxiomReport::validated() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
}

const AxiomResult& AxiomReport::at(const std::string& id) const {
  for (const auto& a : axioms) {
    if (a.id == id) return a;
  }
  throw MismatchError("no axiom '" + id + "'");
}

std::vector<std::string> AxiomReport::failing() const {
  std::vector<std::string> out;
  for (const auto& a : axioms) {
    if (!a.pass) out.push_back(a.id);
  }
  return out;
}

// ---------------------------------------------------------------- ShiftDatum

ShiftDatum::ShiftDatum(std::shared_ptr<const QHModule> module, GroupAction action)
    : module_(std::move(module)), action_(std::move(action)) {
  const QHModule& m = *module_;
  const RootDatum& g = *action_.group;
  if (action_.iota.size() != m.lattice_rank()) throw MismatchError("iota has the wrong number of rows");
  auto vars = g.ring()->vars();
  vars.push_back({"q", true});
  ring_ = PolyRing::make(vars);
  q_index_ = vars.size() - 1;

  pull_map_.emplace(m.u_index(), RatFunc::variable(ring_, "u"));
  pull_map_.emplace(m.q_index(), RatFunc::variable(ring_, "q"));
  for (std::size_t k = 0; k < m.lattice_rank(); ++k) {
    if (action_.iota[k].size() != g.rank()) throw MismatchError("iota has the wrong number of columns");
    RatFunc img(ring_);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      img += RatFunc::variable(ring_, g.h_name(j)) * Rational(kParameterSign * action_.iota[k][j]);
    }
    pull_map_.emplace(m.h_index(k), img);
  }
  auto pull_matrix = [&](const Matrix& a) {
    Matrix out(ring_, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).substitute(pull_map_, ring_);
    }
    return out;
  };
  c1_ = pull_matrix(m.c1_matrix());
  restriction_ = pull_matrix(m.restriction_matrix());
  for (std::size_t k = 0; k < m.rank(); ++k) mult_.push_back(pull_matrix(m.structure_matrix(k)));
}

Vec ShiftDatum::pull(const Vec& y) const {
  Vec out;
  out.reserve(y.size());
  for (const auto& c : y) out.push_back(c.substitute(pull_map_, ring_));
  return out;
}

Vec ShiftDatum::unit() const { return pull(module_->unit()); }

Vec ShiftDatum::mul(const Vec& a, const Vec& b) const {
  Vec out(a.size(), RatFunc(ring_));
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    Vec t = mult_[k] * b;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[k] * t[i];
  }
  return out;
}

const ShiftGenerator* ShiftDatum::find(const AffineWeylElement& a) const {
  for (const auto& g : generators_) {
    if (g.label == a) return &g;
  }
  return nullptr;
}

ShiftGenerator* ShiftDatum::find(const AffineWeylElement& a) {
  for (auto& g : generators_) {
    if (g.label == a) return &g;
  }
  return nullptr;
}

int ShiftDatum::default_bound(const std::vector<int>& sigma) const {
  std::vector<int> t = action_.apply_iota(sigma);
  const ToricData& fan = module_->toric();
  int n = 0;
  for (std::size_t p = 0; p < fan.num_fixed_points(); ++p) {
    int s = 0;
    for (const auto& w : fan.tangent_weights(p)) {
      for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * t[k];
    }
    n = std::max(n, std::abs(s));
  }
  return n;
}

Twist ShiftDatum::label_twist(const AffineWeylElement& a) const { return twist_automorphism(a).extend_to(ring_); }

Operator ShiftDatum::generator_operator(const ShiftGenerator& g) const {
  return Operator{g.matrix, label_twist(g.label)};
}

Operator ShiftDatum::identity_operator() const {
  return Operator{Matrix::identity(ring_, module_->rank()), Twist::identity(ring_)};
}

Operator ShiftDatum::compose(const AffineWeylElement& a) const {
  const RootDatum& d = *action_.group;
  Operator op = identity_operator();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    int c = a.sigma()[i];
    if (c == 0) continue;
    std::vector<int> e(d.rank(), 0);
    e[i] = c > 0 ? 1 : -1;
    const ShiftGenerator* g = find(AffineWeylElement::translation(action_.group, e));
    if (!g) throw MismatchError("no stored generator for translation " + cocharacter_string(e));
    Operator step = generator_operator(*g);
    for (int k = 0; k < std::abs(c); ++k) op = op.then(step);
  }
  for (std::size_t s : d.word(a.w())) {
    const ShiftGenerator* g = find(AffineWeylElement::simple_reflection(action_.group, s));
    if (!g) throw MismatchError("no stored generator for simple reflection " + std::to_string(s));
    op = op.then(generator_operator(*g));
  }
  return op;
}

Vec ShiftDatum::nilhecke_act(const NilHeckeElement& x, const Vec& y) const {
  Vec out(y.size(), RatFunc(ring_));
  for (const auto& [a, f] : x.terms()) {
    Vec t = compose(a).apply(y);
    RatFunc c = f.embed(ring_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * t[i];
  }
  return out;
}

Vec ShiftDatum::connection(const Vec& y) const {
  Vec cy = c1_ * y;
  Vec out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    RatFunc d = y[i].derivative(q_index_) * RatFunc::variable(ring_, "q") * RatFunc::variable(ring_, "u");
    out.push_back(d * Rational(kConnectionSign) - cy[i]);
  }
  return out;
}

Matrix ShiftDatum::connection_residual(const Operator& op) const {
  RatFunc uq = RatFunc::variable(ring_, "u") * RatFunc::variable(ring_, "q");
  Matrix dm = op.matrix.map([&](const RatFunc& f) { return f.derivative(q_index_) * uq * Rational(kConnectionSign); });
  Matrix ac = c1_.map([&](const RatFunc& f) { return op.twist(f); });
  return dm - c1_ * op.matrix + op.matrix * ac;
}

Matrix ShiftDatum::weyl_pushforward(std::size_t i) const {
  const auto& perm = action_.weyl_perm.at(i);
  Twist a = label_twist(AffineWeylElement::simple_reflection(action_.group, i));
  std::size_t n = perm.size();
  // (S y)|_{π(p)} = A(y|_p).
  Matrix p(ring_, n, n);
  for (std::size_t k = 0; k < n; ++k) p(perm[k], k) = RatFunc(ring_, 1);
  Matrix ar = restriction_.map([&](const RatFunc& f) { return a(f); });
  return restriction_.inverse() * p * ar;
}

// ---------------------------------------------------------------- serialization

std::string ShiftDatum::serialize() const {
  std::ostringstream out;
  out << "shift-datum\n";
  out << "module " << module_->name() << "\n";
  out << "group " << action_.describe() << "\n";
  for (const auto& g : generators_) {
    out << "generator " << g.label.to_string() << "\n";
    out << "bound " << g.valuation_bound << "\n";
    for (const auto& [i, img] : g.twist.images()) out << "twist " << ring_->name(i) << " = " << img.to_string() << "\n";
    for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
      for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
        if (!g.matrix(i, j).is_zero()) out << "entry " << i << " " << j << " " << g.matrix(i, j).to_string() << "\n";
      }
    }
    out << "end\n";
  }
  return out.str();
}

ShiftDatum ShiftDatum::deserialize(std::shared_ptr<const QHModule> module, GroupAction action,
                                   const std::string& text) {
  ShiftDatum s(std::move(module), std::move(action));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<ShiftGenerator> cur;
  std::map<std::size_t, RatFunc> images;
  std::size_t n = s.module_->rank();
  auto fail = [&](const std::string& msg) { throw ParseError("shift datum line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto trim = [](std::string t) {
      t.erase(0, t.find_first_not_of(' '));
      return t;
    };
    rest = trim(rest);
    if (key == "shift-datum" || key == "module" || key == "group") continue;
    if (key == "generator") {
      if (cur) fail("missing end");
      cur = ShiftGenerator{};
      try {
        cur->label = AffineWeylElement::parse(s.action_.group, rest);
      } catch (const Error& e) {
        fail(e.what());
      }
      cur->matrix = Matrix(s.ring_, n, n);
      images.clear();
    } else if (!cur) {
      fail("'" + key + "' outside a generator block");
    } else if (key == "bound") {
      cur->valuation_bound = std::stoi(rest);
    } else if (key == "twist") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail("twist needs '='");
      std::string var = rest.substr(0, eq);
      var.erase(var.find_last_not_of(' ') + 1);
      int idx = s.ring_->index(var);
      if (idx < 0) fail("unknown variable " + var);
      images.emplace(static_cast<std::size_t>(idx), parse_ratfunc(rest.substr(eq + 1), s.ring_));
    } else if (key == "entry") {
      std::istringstream es(rest);
      std::size_t i, j;
      if (!(es >> i >> j) || i >= n || j >= n) fail("bad entry indices");
      std::string expr;
      std::getline(es, expr);
      cur->matrix(i, j) = parse_ratfunc(expr, s.ring_);
    } else if (key == "end") {
      cur->twist = Twist(s.ring_, images);
      s.generators_.push_back(*cur);
      cur.reset();
    } else {
      fail("unknown keyword " + key);
    }
  }
  if (cur) fail("missing end");
  return s;
}

// ---------------------------------------------------------------- solving

int q_valuation(const RatFunc& f, std::size_t q_index) {
  if (f.is_zero()) return std::numeric_limits<int>::max();
  return f.num().min_degree(q_index) - f.den().min_degree(q_index);
}

Matrix solve_translation(const ShiftDatum& frame, const std::vector<int>& sigma, int bound, int connection_sign,
                         long budget) {
  const QHModule& m = frame.module();
  const RingPtr& ring = frame.ring();
  std::size_t n = m.rank();
  std::size_t nv = ring->size();
  std::size_t qi = frame.q_index();
  AffineWeylElement label = AffineWeylElement::translation(frame.group(), sigma);
  Twist tw = twist_automorphism(label).extend_to(ring);
  const Matrix& c = frame.c1_matrix();
  Matrix ac = c.map([&](const RatFunc& f) { return tw(f); });

  Polynomial l(ring, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      l = lcm(l, c(i, j).den());
      l = lcm(l, ac(i, j).den());
    }
  }
  auto times_l = [&](const RatFunc& f) { return (f * RatFunc(l)).as_polynomial(); };
  std::vector<Polynomial> cl(n * n), acl(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cl[i * n + j] = times_l(c(i, j));
      acl[i * n + j] = times_l(ac(i, j));
    }
  }

  struct Unknown {
    std::size_t i, j;
    Exponent e;
  };
  std::vector<Unknown> unknowns;
  std::vector<std::size_t> coeff_vars;
  for (std::size_t v = 0; v < nv; ++v) {
    if (v != qi) coeff_vars.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int dd = m.degree(j) - m.degree(i);
      for (int k = -bound; k <= dd; ++k) {
        std::vector<Exponent> monos;
        monomials_of_degree(coeff_vars, nv, dd - k, monos);
        for (auto& e : monos) {
          e[qi] = k;
          unknowns.push_back({i, j, e});
        }
      }
    }
  }

  using Row = LinearSystem::Row;
  std::map<std::pair<std::size_t, Exponent>, Row> eqs;
  Polynomial u = Polynomial::variable(ring, "u");
  auto add_poly = [&](std::size_t entry, std::size_t t, const Polynomial& p) {
    for (const auto& [e, coef] : p.terms()) {
      Rational& slot = eqs[{entry, e}][t];
      slot += coef;
    }
  };
  for (std::size_t t = 0; t < unknowns.size(); ++t) {
    const auto& [i, j, e] = unknowns[t];
    Polynomial mono = Polynomial::monomial(ring, e);
    if (e[qi] != 0) add_poly(i * n + j, t, u * mono * l * Rational(connection_sign * e[qi]));
    for (std::size_t a = 0; a < n; ++a) {
      if (!cl[a * n + i].is_zero()) add_poly(a * n + j, t, -(cl[a * n + i] * mono));
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (!acl[j * n + b].is_zero()) add_poly(i * n + b, t, mono * acl[j * n + b]);
    }
    if (static_cast<long>(eqs.size()) > budget) throw BudgetExhausted("shift solve equations", budget);
  }

  LinearSystem sys(unknowns.size());
  std::string first_conflict;
  auto describe = [&](const std::string& what) {
    if (first_conflict.empty()) first_conflict = what;
  };
  for (auto& [key, row] : eqs) {
    for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
    if (row.empty()) continue;
    if (!sys.add(row, 0)) {
      describe("connection equation, entry (" + std::to_string(key.first / n) + "," + std::to_string(key.first % n) +
               "), monomial " + Polynomial::monomial(ring, key.second).to_string());
    }
  }

  // Anchor: the image of 1 at u = 0 is the Batyrev class z^{ισ}.
  Vec anchor = frame.pull(m.z_class(frame.action().apply_iota(sigma)));
  for (std::size_t i = 0; i < n; ++i) {
    if (!anchor[i].is_polynomial()) {
      throw MathError("Batyrev class z^(" + join(sigma) + ") has a non-polynomial coordinate " + anchor[i].to_string());
    }
    std::map<Exponent, Row> rows;
    for (std::size_t t = 0; t < unknowns.size(); ++t) {
      const auto& un = unknowns[t];
      if (un.j == 0 && un.i == i && un.e[0] == 0) rows[un.e][t] = 1;
    }
    Polynomial v = anchor[i].as_polynomial();
    for (const auto& [e, coef] : v.terms()) {
      if (!rows.count(e)) {
        throw MathError("shift solve for sigma=(" + join(sigma) + ") is infeasible: anchor term " +
                        Polynomial::monomial(ring, e, coef).to_string() + " in coordinate " + std::to_string(i) +
                        " lies outside the ansatz (bound N=" + std::to_string(bound) + ")");
      }
    }
    for (const auto& [e, row] : rows) {
      if (!sys.add(row, v.coefficient_of(e))) {
        describe("anchor, coordinate " + std::to_string(i) + ", monomial " + Polynomial::monomial(ring, e).to_string());
      }
    }
  }
  if (!sys.consistent()) {
    throw MathError("shift solve for sigma=(" + join(sigma) + ") is infeasible with bound N=" + std::to_string(bound) +
                    "; first conflicting constraint: " + first_conflict);
  }
  auto sol = sys.unique_solution();
  if (!sol) {
    throw MathError("shift solve for sigma=(" + join(sigma) + ") is not unique: " +
                    std::to_string(sys.free_unknowns().size()) + " degrees of freedom remain (bound N=" +
                    std::to_string(bound) + ")");
  }
  Matrix out(ring, n, n);
  for (std::size_t t = 0; t < unknowns.size(); ++t) {
    if ((*sol)[t] == 0) continue;
    out(unknowns[t].i, unknowns[t].j) += RatFunc(Polynomial::monomial(ring, unknowns[t].e, (*sol)[t]));
  }
  return out;
}

namespace {

void add_identity_and_weyl(ShiftDatum& s) {
  const RootDatum& d = *s.group();
  ShiftGenerator id;
  id.label = AffineWeylElement::identity(s.group());
  id.matrix = Matrix::identity(s.ring(), s.module().rank());
  id.twist = Twist::identity(s.ring());
  s.generators().insert(s.generators().begin(), id);
  for (std::size_t i = 0; i < d.num_simple(); ++i) {
    ShiftGenerator g;
    g.label = AffineWeylElement::simple_reflection(s.group(), i);
    g.matrix = s.weyl_pushforward(i);
    g.twist = s.label_twist(g.label);
    s.generators().push_back(g);
  }
}

}  // namespace

ShiftDatum solve(std::shared_ptr<const QHModule> module, const GroupAction& action, const SolveOptions& opts) {
  ShiftDatum s(std::move(module), action);
  const RootDatum& d = *s.group();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (int sign : {1, -1}) {
      std::vector<int> e(d.rank(), 0);
      e[i] = sign;
      ShiftGenerator g;
      g.label = AffineWeylElement::translation(s.group(), e);
      g.valuation_bound = s.default_bound(e) + opts.widen;
      g.matrix = solve_translation(s, e, g.valuation_bound, kConnectionSign, opts.budget);
      g.twist = s.label_twist(g.label);
      s.generators().push_back(g);
    }
  }
  add_identity_and_weyl(s);
  return s;
}

ShiftDatum u0_datum(std::shared_ptr<const QHModule> module, const GroupAction& action) {
  ShiftDatum s(std::move(module), action);
  const RootDatum& d = *s.group();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    for (int sign : {1, -1}) {
      std::vector<int> e(d.rank(), 0);
      e[i] = sign;
      ShiftGenerator g;
      g.label = AffineWeylElement::translation(s.group(), e);
      g.valuation_bound = s.default_bound(e);
      Vec z = s.pull(s.module().z_class(action.apply_iota(e)));
      std::size_t n = z.size();
      g.matrix = Matrix(s.ring(), n, n);
      for (std::size_t j = 0; j < n; ++j) {
        Vec col = s.mul(z, s.pull(s.module().basis_vector(j)));
        for (std::size_t r = 0; r < n; ++r) g.matrix(r, j) = col[r];
      }
      g.twist = Twist::identity(s.ring());
      s.generators().push_back(g);
    }
  }
  add_identity_and_weyl(s);
  return s;
}

// ---------------------------------------------------------------- validation

AxiomReport validate(const ShiftDatum& s, std::uint64_t seed, int max_word) {
  AxiomReport rep;
  const RingPtr& ring = s.ring();
  std::size_t n = s.module().rank();
  std::mt19937_64 rng(seed);
  auto rnd = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto random_scalar = [&]() {
    RatFunc f(ring, rnd(-3, 3));
    for (std::size_t v = 0; v < ring->size(); ++v) {
      if (v == s.q_index()) continue;
      f += RatFunc::variable(ring, ring->name(v)) * Rational(rnd(-3, 3));
    }
    return f;
  };
  std::vector<const ShiftGenerator*> moves;
  for (const auto& g : s.generators()) {
    if (!g.label.is_identity()) moves.push_back(&g);
  }

  AxiomResult a1{"i", "identity", true, {}, 0};
  Operator idop = s.identity_operator();
  for (const auto& g : s.generators()) {
    if (!g.label.is_identity()) continue;
    ++a1.checks;
    Matrix diff = g.matrix - idop.matrix;
    if (!diff.is_zero()) {
      a1.pass = false;
      a1.witness = entry_witness("S_id - 1", diff);
    } else if (!(g.twist == idop.twist)) {
      a1.pass = false;
      a1.witness = "identity generator has a nontrivial stored twist";
    }
  }
  rep.axioms.push_back(a1);

  AxiomResult a2{"ii", "twisted linearity", true, {}, 0};
  for (const auto& g : s.generators()) {
    Twist lt = s.label_twist(g.label);
    Operator stored{g.matrix, g.twist};
    for (int trial = 0; trial < 3 && a2.pass; ++trial) {
      ++a2.checks;
      RatFunc f = random_scalar();
      Vec y = s.pull(s.module().basis_vector(static_cast<std::size_t>(rnd(0, static_cast<int>(n) - 1))));
      Vec fy;
      for (const auto& c : y) fy.push_back(f * c);
      Vec lhs = stored.apply(fy), rhs = stored.apply(y);
      RatFunc af = lt(f);
      for (std::size_t i = 0; i < n; ++i) {
        RatFunc r = lhs[i] - af * rhs[i];
        if (!r.is_zero()) {
          a2.pass = false;
          a2.witness = "S_" + g.label.to_string() + "(f*y) - A(f)*S(y) with f=" + f.to_string() + ", coordinate " +
                       std::to_string(i) + ": " + r.to_string();
          break;
        }
      }
    }
    if (a2.pass && !(g.twist == lt)) {
      a2.pass = false;
      a2.witness = "stored twist of " + g.label.to_string() + " differs from the twist of its label";
    }
  }
  rep.axioms.push_back(a2);

  AxiomResult a3{"iii", "module law", true, {}, 0};
  std::vector<std::size_t> word;
  std::function<void()> walk = [&]() {
    if (!a3.pass) return;
    if (!word.empty()) {
      ++a3.checks;
      Operator op = s.generator_operator(*moves[word[0]]);
      AffineWeylElement label = moves[word[0]]->label;
      for (std::size_t k = 1; k < word.size(); ++k) {
        op = op.then(s.generator_operator(*moves[word[k]]));
        label = label * moves[word[k]]->label;
      }
      Operator canon = s.compose(label);
      Matrix diff = op.matrix - canon.matrix;
      if (!diff.is_zero()) {
        std::string w;
        for (auto k : word) w += (w.empty() ? "" : " * ") + moves[k]->label.to_string();
        a3.pass = false;
        a3.witness = "word " + w + " vs " + label.to_string() + ": " + entry_witness("difference", diff);
        return;
      }
    }
    if (static_cast<int>(word.size()) == max_word) return;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      word.push_back(k);
      walk();
      word.pop_back();
    }
  };
  walk();
  rep.axioms.push_back(a3);

  AxiomResult a4{"iv", "connection commutation", true, {}, 0};
  for (const auto* g : moves) {
    ++a4.checks;
    Matrix r = s.connection_residual(s.generator_operator(*g));
    if (!r.is_zero()) {
      a4.pass = false;
      a4.witness = entry_witness("[nabla, S_" + g->label.to_string() + "]", r);
      break;
    }
  }
  rep.axioms.push_back(a4);

  AxiomResult a5{"v", "Weyl pushforward", true, {}, 0};
  for (std::size_t i = 0; i < s.group()->num_simple(); ++i) {
    ++a5.checks;
    const ShiftGenerator* g = s.find(AffineWeylElement::simple_reflection(s.group(), i));
    if (!g) {
      a5.pass = false;
      a5.witness = "no generator for simple reflection " + std::to_string(i);
      break;
    }
    Matrix diff = g->matrix - s.weyl_pushforward(i);
    if (!diff.is_zero()) {
      a5.pass = false;
      a5.witness = entry_witness("S_" + g->label.to_string() + " - pushforward", diff);
      break;
    }
  }
  rep.axioms.push_back(a5);

  AxiomResult a6{"vi", "q-valuation bound", true, {}, 0};
  for (const auto& g : s.generators()) {
    for (std::size_t i = 0; i < n && a6.pass; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ++a6.checks;
        int v = q_valuation(g.matrix(i, j), s.q_index());
        if (v < -g.valuation_bound) {
          a6.pass = false;
          a6.witness = "S_" + g.label.to_string() + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                       ") has q-valuation " + std::to_string(v) + " below -N=" + std::to_string(-g.valuation_bound);
          break;
        }
      }
    }
  }
  rep.axioms.push_back(a6);

  AxiomResult a7{"vii", "unit image at u=0", true, {}, 0};
  Vec one = s.unit();
  auto at_u0 = [&](const Vec& y) {
    Vec out;
    for (const auto& c : y) out.push_back(c.evaluate(0, 0));
    return out;
  };
  for (const auto* g : moves) {
    if (!g->label.is_translation() || !a7.pass) continue;
    const ShiftGenerator* inv = s.find(g->label.inverse());
    if (!inv) continue;
    ++a7.checks;
    try {
      Vec p = at_u0(s.generator_operator(*g).apply(one));
      Vec pinv = at_u0(s.generator_operator(*inv).apply(one));
      Vec prod = s.mul(p, pinv);
      Vec unit0 = at_u0(one);
      for (std::size_t i = 0; i < n; ++i) {
        RatFunc r = prod[i] - unit0[i];
        if (!r.is_zero()) {
          a7.pass = false;
          a7.witness = "P(" + g->label.to_string() + ")*P(" + inv->label.to_string() + ") - 1, coordinate " +
                       std::to_string(i) + ": " + r.to_string();
          break;
        }
      }
    } catch (const MathError& e) {
      a7.pass = false;
      a7.witness = "S_" + g->label.to_string() + " or its inverse is singular at u=0: " + e.what();
    }
  }
  rep.axioms.push_back(a7);
  return rep;
}

}  // namespace nilshift

namespace nilshift {

std::vector<ShiftFault> shift_faults(const ShiftDatum& base) {
  std::vector<ShiftFault> out;
  const RingPtr& ring = base.ring();
  const DatumPtr& g = base.group();
  std::size_t n = base.module().rank();
  RatFunc u = RatFunc::variable(ring, "u");
  auto sigma = [&](int sign) {
    std::vector<int> e(g->rank(), 0);
    if (!e.empty()) e[0] = sign;
    return AffineWeylElement::translation(g, e);
  };
  auto add = [&](std::string name, std::string axiom, const std::function<void(ShiftDatum&)>& f) {
    ShiftDatum d = base;
    f(d);
    out.push_back({std::move(name), std::move(axiom), std::move(d)});
  };

  add("identity-doubled", "i", [&](ShiftDatum& d) {
    ShiftGenerator* id = d.find(AffineWeylElement::identity(g));
    id->matrix = id->matrix * RatFunc(ring, 2);
  });
  if (g->rank() == 0) return out;

  add("wrong-twist", "ii", [&](ShiftDatum& d) { d.find(sigma(1))->twist = d.label_twist(sigma(-1)); });
  add("scaled-inverse", "iii", [&](ShiftDatum& d) {
    ShiftGenerator* m = d.find(sigma(-1));
    m->matrix = m->matrix * (RatFunc(ring, 1) + u);
  });
  if (g->rank() == 1 && g->num_simple() == 0 && n >= 2) {
    add("gauge-pair", "iv", [&](ShiftDatum& d) {
      Matrix x = Matrix::identity(ring, n), xinv = Matrix::identity(ring, n);
      x(0, 1) = u;
      xinv(0, 1) = -u;
      ShiftGenerator* p = d.find(sigma(1));
      ShiftGenerator* m = d.find(sigma(-1));
      p->matrix = p->matrix * x;
      m->matrix = xinv * m->matrix;
    });
  }
  if (g->num_simple() > 0) {
    add("negated-reflection", "v", [&](ShiftDatum& d) {
      ShiftGenerator* s = d.find(AffineWeylElement::simple_reflection(g, 0));
      s->matrix = s->matrix * RatFunc(ring, -1);
    });
  }
  add("zero-bound", "vi", [&](ShiftDatum& d) { d.find(sigma(1))->valuation_bound = 0; });
  // With Weyl generators, s t_σ s = t_{-σ} ties the two scalings together.
  if (g->num_simple() > 0) return out;
  add("u-scaled", "vii", [&](ShiftDatum& d) {
    ShiftGenerator* p = d.find(sigma(1));
    ShiftGenerator* m = d.find(sigma(-1));
    p->matrix = p->matrix * u;
    m->matrix = m->matrix * u.inverse();
  });
  return out;
}

}  // namespace nilshift
