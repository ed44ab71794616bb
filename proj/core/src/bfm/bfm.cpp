#include "nilshift/bfm/bfm.hpp"

#include <algorithm>
#include <functional>

#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/linalg.hpp"

namespace nilshift {

namespace {

// Exponent vectors over the listed variables with total degree <= d.
std::vector<Exponent> monomials_up_to(const std::vector<std::size_t>& vars, std::size_t nvars, int d) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == vars.size()) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[vars[k]] = a;
      rec(k + 1, left - a);
    }
    e[vars[k]] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), print_order_less);
  return out;
}

// Coefficient vector of u=0 nil-Hecke elements: (basis element, coefficient monomial) -> rational.
using Flat = std::map<std::pair<AffineWeylElement, Exponent>, Rational>;

Flat flatten(const NilHeckeElement& x) {
  Flat out;
  NilHeckeElement r = u_reduce(x);
  for (const auto& [a, f] : r.terms()) {
    if (!f.is_polynomial()) throw MathError("spherical element with non-polynomial coefficient " + f.to_string());
    Rational d = f.den().constant_value();
    for (const auto& [e, c] : f.num().terms()) out[{a, e}] += c / d;
  }
  return out;
}

// Solves Σ c_m flat(m) = flat(target) over monomials; nullopt if impossible.
std::optional<std::vector<Rational>> express(const std::vector<Flat>& monos, const Flat& target) {
  std::map<std::pair<AffineWeylElement, Exponent>, LinearSystem::Row> rows;
  for (std::size_t m = 0; m < monos.size(); ++m) {
    for (const auto& [k, c] : monos[m]) rows[k][m] += c;
  }
  for (const auto& [k, c] : target) rows[k];
  LinearSystem sys(monos.size());
  for (auto& [k, row] : rows) {
    auto it = target.find(k);
    sys.add(row, it == target.end() ? Rational(0) : it->second);
  }
  return sys.particular_solution();
}

Matrix embed_matrix(const Matrix& m, const RingPtr& ring) {
  Matrix out(ring, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).embed(ring);
  }
  return out;
}

Matrix specialize_u0_q1(const ShiftDatum& s, const Matrix& m) {
  return m.map([&](const RatFunc& f) { return f.evaluate(0, 0).evaluate(s.q_index(), 1); });
}

// Even polynomial in h -> polynomial in a = h^2.
RatFunc even_to_a(const RatFunc& f, std::size_t h_index, const RingPtr& target, std::size_t a_index) {
  if (!f.is_polynomial()) throw MathError("invariant coordinate is not polynomial: " + f.to_string());
  Rational d = f.den().constant_value();
  Polynomial out(target);
  for (const auto& [e, c] : f.num().terms()) {
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (v != h_index && e[v] != 0) throw MathError("invariant coordinate involves more than h: " + f.to_string());
    }
    if (e[h_index] % 2 != 0) throw MathError("invariant coordinate is not even in h: " + f.to_string());
    Exponent ne(target->size(), 0);
    ne[a_index] = e[h_index] / 2;
    out.add_term(ne, c / d);
  }
  return RatFunc(out);
}

}  // namespace

// ---------------------------------------------------------------- BFMSpace

BFMSpace BFMSpace::torus(const DatumPtr& t) {
  if (t->num_simple() != 0) throw MismatchError("torus BFM space requested for " + t->name());
  BFMSpace s;
  std::size_t r = t->rank();
  s.name_ = "BFM(" + t->name() + ")";
  s.group_ = t;
  std::vector<PolyRing::Var> vars;
  for (std::size_t i = 0; i < r; ++i) vars.push_back({r == 1 ? "z" : "z" + std::to_string(i + 1), true});
  for (std::size_t i = 0; i < r; ++i) vars.push_back({t->h_name(i), false});
  s.ring_ = PolyRing::make(vars);
  s.dimension_ = 2 * r;
  for (std::size_t i = 0; i < r; ++i) {
    s.operator_vars_.push_back(i);
    s.scalar_vars_.push_back(r + i);
  }
  s.table_.assign(2 * r, std::vector<Polynomial>(2 * r, Polynomial(s.ring_)));
  for (std::size_t i = 0; i < r; ++i) {
    Polynomial z = Polynomial::variable(s.ring_, i);
    s.table_[i][r + i] = z;
    s.table_[r + i][i] = -z;
  }
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    s.nh_.push_back(NilHeckeElement::basis(AffineWeylElement::translation(t, e)));
  }
  for (std::size_t i = 0; i < r; ++i) {
    s.nh_.push_back(NilHeckeElement::scalar(t, RatFunc::variable(t->ring(), t->h_name(i))));
  }
  return s;
}

BFMSpace BFMSpace::su2_spherical() {
  BFMSpace s;
  auto d = RootDatum::parse("SU2");
  s.name_ = "BFM(SU2) spherical";
  s.group_ = d;
  s.ring_ = PolyRing::make({{"a", false}, {"b", false}, {"c", false}});
  s.dimension_ = 2;
  s.scalar_vars_ = {0};
  s.operator_vars_ = {1, 2};

  auto h = NilHeckeElement::scalar(d, RatFunc::variable(d->ring(), "h"));
  auto z = NilHeckeElement::basis(AffineWeylElement::translation(d, {1}));
  auto zi = NilHeckeElement::basis(AffineWeylElement::translation(d, {-1}));
  s.nh_ = {symmetrize(convolve(h, h)), symmetrize(z + zi), symmetrize(convolve(h, z - zi))};

  // Monomials a^i b^j c^k of degree <= 3, built from the spherical unit.
  auto exps = monomials_up_to({0, 1, 2}, 3, 3);
  std::vector<NilHeckeElement> elems;
  std::vector<Flat> flats;
  for (const auto& e : exps) {
    NilHeckeElement x = symmetrize(NilHeckeElement::one(d));
    for (std::size_t v = 0; v < 3; ++v) {
      for (int k = 0; k < e[v]; ++k) x = convolve(x, s.nh_[v]);
    }
    elems.push_back(x);
    flats.push_back(flatten(x));
  }
  std::map<std::pair<AffineWeylElement, Exponent>, std::vector<Rational>> cols;
  std::size_t n = exps.size();
  for (std::size_t m = 0; m < n; ++m) {
    for (const auto& [k, c] : flats[m]) {
      auto& row = cols[k];
      row.resize(n);
      row[m] = c;
    }
  }
  std::vector<std::vector<Rational>> rows;
  for (auto& [k, row] : cols) {
    row.resize(n);
    rows.push_back(row);
  }
  for (const auto& v : nullspace(rows, n)) {
    Polynomial p(s.ring_);
    for (std::size_t m = 0; m < n; ++m) p.add_term(exps[m], v[m]);
    s.relations_.push_back(p * (Rational(1) / p.content()));
  }

  IdealPresentation rel = groebner(IdealPresentation(s.ring_, s.relations_));
  s.table_.assign(3, std::vector<Polynomial>(3, Polynomial(s.ring_)));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      Flat target = flatten(poisson_bracket_first_order(s.nh_[i], s.nh_[j]));
      auto sol = express(flats, target);
      if (!sol) throw MathError("spherical bracket is not a polynomial in a, b, c of degree <= 3");
      Polynomial p(s.ring_);
      for (std::size_t m = 0; m < n; ++m) p.add_term(exps[m], (*sol)[m]);
      p = normal_form(p, rel);
      s.table_[i][j] = p;
      s.table_[j][i] = -p;
    }
  }
  return s;
}

Polynomial BFMSpace::bracket(const Polynomial& f, const Polynomial& g) const {
  Polynomial out(ring_);
  std::size_t n = ring_->size();
  std::vector<Polynomial> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (dg[j].is_zero() || table_[i][j].is_zero()) continue;
      out += df[i] * dg[j] * table_[i][j];
    }
  }
  return out;
}

// ---------------------------------------------------------------- module

Matrix PontryaginModule::represent(const Polynomial& f) const {
  const RingPtr& ring = space.ring();
  Matrix out(ring, rank, rank);
  for (const auto& [e, c] : f.terms()) {
    Matrix term = Matrix::identity(ring, rank) * RatFunc(ring, c);
    for (std::size_t v = 0; v < e.size(); ++v) {
      const Matrix& step = e[v] >= 0 ? action[v] : inverse_action.at(v);
      for (int k = 0; k < std::abs(e[v]); ++k) term = term * step;
    }
    out = out + term;
  }
  return out;
}

PontryaginModule pontryagin_module(const ShiftDatum& s) {
  const RootDatum& g = *s.group();
  std::size_t n = s.module().rank();
  if (g.num_simple() == 0) {
    PontryaginModule mod{BFMSpace::torus(s.group()), n, {}, {}};
    const RingPtr& ring = mod.space.ring();
    std::size_t r = g.rank();
    mod.action.resize(2 * r);
    mod.inverse_action.resize(2 * r);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<int> e(r, 0);
      e[i] = 1;
      auto op = s.compose(AffineWeylElement::translation(s.group(), e));
      e[i] = -1;
      auto inv = s.compose(AffineWeylElement::translation(s.group(), e));
      mod.action[i] = embed_matrix(specialize_u0_q1(s, op.matrix), ring);
      mod.inverse_action[i] = embed_matrix(specialize_u0_q1(s, inv.matrix), ring);
      mod.action[r + i] = Matrix::identity(ring, n) * RatFunc::variable(ring, g.h_name(i));
    }
    return mod;
  }
  if (g.name() != "SU2") throw MismatchError("Pontryagin module implemented for tori and SU2, not " + g.name());

  PontryaginModule mod{BFMSpace::su2_spherical(), n, {}, {}};
  const RingPtr& ring = mod.space.ring();
  const RingPtr& sr = s.ring();
  auto at_u0_q1 = [&](const Vec& y) {
    Vec out;
    for (const auto& c : y) out.push_back(c.evaluate(0, 0).evaluate(s.q_index(), 1));
    return out;
  };
  // Invariant basis: Reynolds images of the class basis.
  auto sym = symmetrizer(s.group());
  Matrix basis(sr, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec y = at_u0_q1(s.nilhecke_act(sym, s.pull(s.module().basis_vector(j))));
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = y[i];
  }
  Matrix binv = basis.inverse();
  std::size_t h = g.h_index(0);
  for (std::size_t v = 0; v < 3; ++v) {
    Matrix m(ring, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec col;
      for (std::size_t i = 0; i < n; ++i) col.push_back(basis(i, j));
      Vec image = at_u0_q1(s.nilhecke_act(mod.space.nilhecke_generators()[v], col));
      Vec coords = binv * image;
      for (std::size_t i = 0; i < n; ++i) m(i, j) = even_to_a(coords[i], h, ring, 0);
    }
    mod.action.push_back(m);
  }
  mod.inverse_action.resize(3);
  return mod;
}

// ---------------------------------------------------------------- annihilator

namespace {

std::vector<Polynomial> kernel_window(const PontryaginModule& mod, int scalar_degree, int operator_degree) {
  const BFMSpace& sp = mod.space;
  const RingPtr& ring = sp.ring();
  std::size_t nv = ring->size();
  auto scal = monomials_up_to(sp.scalar_vars(), nv, scalar_degree);
  auto ops = monomials_up_to(sp.operator_vars(), nv, operator_degree);
  std::size_t n = mod.rank;

  std::vector<Exponent> unknowns;
  std::map<std::tuple<std::size_t, std::size_t, Exponent>, LinearSystem::Row> rows;
  for (const auto& b : ops) {
    Matrix op = mod.represent(Polynomial::monomial(ring, b));
    for (const auto& a : scal) {
      std::size_t t = unknowns.size();
      Exponent e(nv);
      for (std::size_t v = 0; v < nv; ++v) e[v] = a[v] + b[v];
      unknowns.push_back(e);
      Polynomial sa = Polynomial::monomial(ring, a);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (op(i, j).is_zero()) continue;
          if (!op(i, j).is_polynomial()) throw MathError("module action has a denominator: " + op(i, j).to_string());
          Polynomial p = op(i, j).as_polynomial() * sa;
          for (const auto& [m, c] : p.terms()) rows[{i, j, m}][t] += c;
        }
      }
    }
  }
  LinearSystem sys(unknowns.size());
  for (auto& [k, row] : rows) {
    for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
    if (!row.empty()) sys.add(row, 0);
  }
  std::vector<Polynomial> out;
  for (const auto& v : sys.homogeneous_basis()) {
    Polynomial p(ring);
    for (std::size_t t = 0; t < v.size(); ++t) p.add_term(unknowns[t], v[t]);
    if (!p.is_zero()) out.push_back(p * (Rational(1) / p.content()));
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& x, const Polynomial& y) {
    if (x.total_degree() != y.total_degree()) return x.total_degree() < y.total_degree();
    return x < y;
  });
  return out;
}

// Adds kernel elements not already in the ideal; returns the generating list and its basis.
std::pair<std::vector<Polynomial>, IdealPresentation> close(const BFMSpace& sp, const std::vector<Polynomial>& kernel,
                                                            long budget) {
  std::vector<Polynomial> gens = sp.relations();
  IdealPresentation cur = groebner(IdealPresentation(sp.ring(), gens), budget);
  for (const auto& p : kernel) {
    if (ideal_membership(p, cur, budget)) continue;
    gens.push_back(p);
    cur = groebner(IdealPresentation(sp.ring(), gens), budget);
  }
  return {gens, cur};
}

bool zero_dimensional_fiber(const BFMSpace& sp, const std::vector<Polynomial>& gens, long budget) {
  std::vector<Polynomial> fiber = gens;
  int k = 0;
  for (auto v : sp.scalar_vars()) {
    // A fixed generic-looking point of the base.
    Rational value(2 * k + 3, 7 + 4 * k);
    fiber.push_back(Polynomial::variable(sp.ring(), v) - Polynomial(sp.ring(), value));
    ++k;
  }
  IdealPresentation ideal = groebner(IdealPresentation(sp.ring(), fiber), budget);
  return krull_dimension(ideal) == 0;
}

}  // namespace

AnnihilatorResult annihilator_ideal(const PontryaginModule& mod, const KernelWindow& window, long budget) {
  const BFMSpace& sp = mod.space;
  std::optional<std::pair<std::vector<Polynomial>, IdealPresentation>> prev;
  for (int d = window.first_operator_degree; d <= window.max_operator_degree; ++d) {
    auto cur = close(sp, kernel_window(mod, window.scalar_degree, d), budget);
    if (prev && ideals_equal(prev->second, cur.second, budget) &&
        zero_dimensional_fiber(sp, prev->first, budget)) {
      return AnnihilatorResult{prev->second, prev->first, d - 1};
    }
    prev = std::move(cur);
  }
  throw MathError("annihilator window too small: the ideal did not stabilize up to operator degree " +
                  std::to_string(window.max_operator_degree) + "; increase the window");
}

IdealPresentation graph_ideal(const ShiftDatum& s, const BFMSpace& space) {
  const QHModule& m = s.module();
  const RingPtr& pr = m.presentation().ring();
  const RingPtr& ring = space.ring();
  std::map<std::size_t, Polynomial> images;
  images.emplace(static_cast<std::size_t>(pr->require("q")), Polynomial(ring, 1));
  images.emplace(static_cast<std::size_t>(pr->require("u")), Polynomial(ring));
  const RootDatum& g = *s.group();
  if (g.num_simple() != 0 || g.rank() != m.lattice_rank()) {
    throw MismatchError("graph ideal needs the full torus of " + m.name() + ", not " + g.name());
  }
  for (std::size_t k = 0; k < m.lattice_rank(); ++k) {
    Polynomial img(ring);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      img += Polynomial::variable(ring, g.h_name(j)) * Rational(kParameterSign * s.action().iota[k][j]);
    }
    images.emplace(static_cast<std::size_t>(pr->require(m.datum()->h_name(k))), img);
  }
  std::vector<Polynomial> gens;
  for (const auto& r : m.relations()) gens.push_back(r.substitute(images, ring));
  return IdealPresentation(ring, gens);
}

// ---------------------------------------------------------------- certification

std::vector<std::string> LagrangianReport::failing() const {
  std::vector<std::string> out;
  if (!coisotropic) out.push_back("coisotropic");
  if (!dimension_ok) out.push_back("dimension");
  if (graph_equal && !*graph_equal) out.push_back("graph");
  return out;
}

LagrangianReport certify_lagrangian(const BFMSpace& space, const std::vector<Polynomial>& generators,
                                    const std::optional<IdealPresentation>& graph, long budget) {
  LagrangianReport rep;
  rep.space = space.name();
  std::vector<Polynomial> gens = generators;
  for (const auto& r : space.relations()) {
    if (std::find(gens.begin(), gens.end(), r) == gens.end()) gens.push_back(r);
  }
  for (const auto& g : gens) rep.generators.push_back(g.to_string());
  IdealPresentation ideal = groebner(IdealPresentation(space.ring(), gens), budget);
  rep.krull_dimension = krull_dimension(ideal);
  rep.half_dimension = static_cast<int>(space.dimension() / 2);
  rep.dimension_ok = rep.krull_dimension == rep.half_dimension;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      Polynomial br = space.bracket(gens[a], gens[b]);
      bool in = ideal_membership(br, ideal, budget);
      rep.brackets.push_back({a, b, br.to_string(), in});
      if (!in) rep.coisotropic = false;
    }
  }
  if (graph) rep.graph_equal = ideals_equal(ideal, *graph, budget);
  return rep;
}

}  // namespace nilshift
