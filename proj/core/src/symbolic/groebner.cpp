#include "nilshift/symbolic/groebner.hpp"

#include <algorithm>
#include <set>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

// ---------------------------------------------------------------- orders

MonomialOrder::MonomialOrder(std::string name, std::vector<std::vector<std::size_t>> blocks)
    : name_(std::move(name)), blocks_(std::move(blocks)) {}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  std::vector<std::size_t> all(nvars);
  for (std::size_t i = 0; i < nvars; ++i) all[i] = i;
  return MonomialOrder("grevlex", {all});
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < nvars; ++i) blocks.push_back({i});
  return MonomialOrder("lex", blocks);
}

int MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  for (const auto& block : blocks_) {
    int da = 0, db = 0;
    for (auto v : block) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da < db ? -1 : 1;
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------- sorted polynomials

namespace {

struct Term {
  Exponent e;
  Rational c;
};
using SPoly = std::vector<Term>;

SPoly to_sorted(const Polynomial& f, const MonomialOrder& order) {
  SPoly out;
  out.reserve(f.nterms());
  for (const auto& [e, c] : f.terms()) out.push_back({e, c});
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return order.compare(a.e, b.e) > 0; });
  return out;
}

Polynomial from_sorted(const SPoly& f, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& t : f) p.add_term(t.e, t.c);
  return p;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent lcm_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

// f[from..] - c * x^m * g, merged in descending order.
SPoly sub_mul(const SPoly& f, std::size_t from, const Rational& c, const Exponent& m, const SPoly& g,
              const MonomialOrder& order) {
  SPoly out;
  out.reserve(f.size() - from + g.size());
  std::size_t i = from, j = 0;
  Exponent shifted(m.size());
  auto shift = [&](const Exponent& e) {
    for (std::size_t k = 0; k < m.size(); ++k) shifted[k] = e[k] + m[k];
  };
  bool have = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have) {
      shift(g[j].e);
      have = true;
    }
    int cmp;
    if (i >= f.size()) cmp = -1;
    else if (j >= g.size()) cmp = 1;
    else cmp = order.compare(f[i].e, shifted);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({shifted, -c * g[j].c});
      ++j;
      have = false;
    } else {
      Rational v = f[i].c - c * g[j].c;
      if (v != 0) out.push_back({f[i].e, v});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

void make_monic(SPoly& f) {
  if (f.empty()) return;
  Rational lc = f.front().c;
  if (lc == 1) return;
  for (auto& t : f) t.c /= lc;
}

class Stepper {
 public:
  Stepper(long budget, std::string stage) : budget_(budget), stage_(std::move(stage)) {}
  void tick() {
    if (++steps_ > budget_) throw BudgetExhausted(stage_, budget_);
  }

 private:
  long budget_;
  long steps_ = 0;
  std::string stage_;
};

SPoly reduce_full(SPoly p, const std::vector<const SPoly*>& divisors, const MonomialOrder& order,
                  Stepper& steps) {
  SPoly rem;
  std::size_t start = 0;
  while (start < p.size()) {
    const Term& lt = p[start];
    const SPoly* hit = nullptr;
    for (const SPoly* g : divisors) {
      if (!g->empty() && divides(g->front().e, lt.e)) {
        hit = g;
        break;
      }
    }
    if (!hit) {
      rem.push_back(lt);
      ++start;
      continue;
    }
    steps.tick();
    Exponent m(lt.e.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = lt.e[k] - hit->front().e[k];
    Rational c = lt.c / hit->front().c;
    p = sub_mul(p, start, c, m, *hit, order);
    start = 0;
  }
  return rem;
}

SPoly s_polynomial(const SPoly& f, const SPoly& g, const MonomialOrder& order) {
  Exponent l = lcm_exp(f.front().e, g.front().e);
  Exponent mf(l.size()), mg(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    mf[k] = l[k] - f.front().e[k];
    mg[k] = l[k] - g.front().e[k];
  }
  SPoly zero;
  SPoly a = sub_mul(zero, 0, Rational(-1) / f.front().c, mf, f, order);
  return sub_mul(a, 0, Rational(1) / g.front().c, mg, g, order);
}

std::vector<SPoly> buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order, long budget) {
  Stepper steps(budget, "groebner");
  std::vector<SPoly> G;
  std::vector<bool> active;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto divisor_list = [&]() {
    std::vector<const SPoly*> out;
    for (std::size_t k = 0; k < G.size(); ++k) {
      if (active[k]) out.push_back(&G[k]);
    }
    return out;
  };

  auto add = [&](SPoly r) {
    make_monic(r);
    std::size_t n = G.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (active[k]) pending.insert({k, n});
    }
    G.push_back(std::move(r));
    active.push_back(true);
  };

  for (const auto& g : gens) {
    SPoly r = reduce_full(to_sorted(g, order), divisor_list(), order, steps);
    if (!r.empty()) add(std::move(r));
  }

  while (!pending.empty()) {
    auto best = pending.begin();
    Exponent best_lcm = lcm_exp(G[best->first].front().e, G[best->second].front().e);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exponent l = lcm_exp(G[it->first].front().e, G[it->second].front().e);
      if (order.compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    auto [i, j] = *best;
    pending.erase(best);
    steps.tick();
    const Exponent& li = G[i].front().e;
    const Exponent& lj = G[j].front().e;
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j || !active[k]) continue;
      if (!divides(G[k].front().e, best_lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending.count(key(i, k)) && !pending.count(key(j, k))) chain = true;
    }
    if (chain) continue;
    SPoly r = reduce_full(s_polynomial(G[i], G[j], order), divisor_list(), order, steps);
    if (!r.empty()) add(std::move(r));
  }

  // Minimal basis, then inter-reduce.
  std::vector<SPoly> minimal;
  for (std::size_t k = 0; k < G.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < G.size() && !redundant; ++l) {
      if (l == k) continue;
      const Exponent& a = G[l].front().e;
      const Exponent& b = G[k].front().e;
      if (divides(a, b) && (a != b || l < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[k]);
  }
  std::vector<SPoly> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const SPoly*> others;
    for (std::size_t l = 0; l < minimal.size(); ++l) {
      if (l != k) others.push_back(&minimal[l]);
    }
    SPoly head{minimal[k].front()};
    SPoly tail(minimal[k].begin() + 1, minimal[k].end());
    SPoly r = reduce_full(tail, others, order, steps);
    head.insert(head.end(), r.begin(), r.end());
    make_monic(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const SPoly& a, const SPoly& b) { return order.compare(a.front().e, b.front().e) < 0; });
  return reduced;
}

}  // namespace

// ---------------------------------------------------------------- ideals

IdealPresentation::IdealPresentation(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)) {
  std::vector<PolyRing::Var> vars;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    vars.push_back({ring_->name(i), false});
    if (ring_->laurent(i)) laurent_vars_.push_back(i);
  }
  for (auto i : laurent_vars_) vars.push_back({"t_" + ring_->name(i), false});
  work_ring_ = PolyRing::make(std::move(vars));
  for (auto& g : generators_) {
    if (g.is_zero()) {
      g = Polynomial(ring_);
      continue;
    }
    if (!same_ring(g.ring(), ring_)) g = g.embed(ring_);
  }
  generators_.erase(std::remove_if(generators_.begin(), generators_.end(),
                                   [](const Polynomial& g) { return g.is_zero(); }),
                    generators_.end());
}

Polynomial IdealPresentation::to_work(const Polynomial& f) const {
  Polynomial out(work_ring_);
  std::size_t n = ring_->size();
  const Polynomial& g = same_ring(f.ring(), ring_) || f.is_zero() ? f : f.embed(ring_);
  for (const auto& [e, c] : g.terms()) {
    Exponent w(work_ring_->size(), 0);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::max(e[i], 0);
    for (std::size_t k = 0; k < laurent_vars_.size(); ++k) w[n + k] = std::max(-e[laurent_vars_[k]], 0);
    out.add_term(w, c);
  }
  return out;
}

Polynomial IdealPresentation::from_work(const Polynomial& f) const {
  Polynomial out(ring_);
  std::size_t n = ring_->size();
  for (const auto& [w, c] : f.terms()) {
    Exponent e(w.begin(), w.begin() + static_cast<long>(n));
    for (std::size_t k = 0; k < laurent_vars_.size(); ++k) e[laurent_vars_[k]] -= w[n + k];
    out.add_term(e, c);
  }
  return out;
}

std::vector<Polynomial> IdealPresentation::work_generators() const {
  std::vector<Polynomial> out;
  std::size_t n = ring_->size();
  for (std::size_t k = 0; k < laurent_vars_.size(); ++k) {
    Exponent e(work_ring_->size(), 0);
    e[laurent_vars_[k]] = 1;
    e[n + k] = 1;
    out.push_back(Polynomial::monomial(work_ring_, e, 1) - Polynomial(work_ring_, Rational(1)));
  }
  for (const auto& g : generators_) out.push_back(to_work(g));
  return out;
}

const std::vector<Polynomial>& IdealPresentation::basis() const {
  if (!basis_) throw MathError("ideal has no cached Groebner basis");
  return *basis_;
}

const MonomialOrder& IdealPresentation::order() const {
  if (!basis_) throw MathError("ideal has no cached Groebner basis");
  return order_;
}

bool IdealPresentation::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().is_constant();
}

MonomialOrder IdealPresentation::default_order() const { return MonomialOrder::grevlex(work_ring_->size()); }

IdealPresentation groebner(const IdealPresentation& ideal, const MonomialOrder& order, long budget) {
  IdealPresentation out = ideal;
  std::vector<SPoly> g = buchberger(ideal.work_generators(), order, budget);
  std::vector<Polynomial> basis;
  for (const auto& s : g) basis.push_back(from_sorted(s, ideal.work_ring()));
  out.basis_ = std::move(basis);
  out.order_ = order;
  return out;
}

IdealPresentation groebner(const IdealPresentation& ideal, long budget) {
  return groebner(ideal, ideal.default_order(), budget);
}

Exponent leading_exponent(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw MathError("leading exponent of zero");
  const Exponent* best = nullptr;
  for (const auto& [e, c] : f.terms()) {
    if (!best || order.compare(e, *best) > 0) best = &e;
  }
  return *best;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& order,
                  long budget) {
  Stepper steps(budget, "normal form");
  std::vector<SPoly> ds;
  for (const auto& d : divisors) ds.push_back(to_sorted(d, order));
  std::vector<const SPoly*> ptrs;
  for (const auto& d : ds) ptrs.push_back(&d);
  return from_sorted(reduce_full(to_sorted(f, order), ptrs, order, steps), f.ring());
}

Polynomial normal_form(const Polynomial& f, const IdealPresentation& ideal) {
  Polynomial w = reduce(ideal.to_work(f), ideal.basis(), ideal.order());
  return ideal.from_work(w);
}

bool ideal_membership(const Polynomial& f, const IdealPresentation& ideal, long budget) {
  if (!ideal.has_basis()) return ideal_membership(f, groebner(ideal, budget), budget);
  return reduce(ideal.to_work(f), ideal.basis(), ideal.order(), budget).is_zero();
}

int krull_dimension(const IdealPresentation& ideal) {
  if (!ideal.has_basis()) return krull_dimension(groebner(ideal));
  if (ideal.is_unit()) return -1;
  std::vector<unsigned long> supports;
  for (const auto& g : ideal.basis()) {
    Exponent e = leading_exponent(g, ideal.order());
    unsigned long mask = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) mask |= 1UL << i;
    }
    supports.push_back(mask);
  }
  std::size_t n = ideal.work_ring()->size();
  if (n > 24) throw MathError("too many variables for dimension computation");
  int best = 0;
  for (unsigned long s = 0; s < (1UL << n); ++s) {
    int size = __builtin_popcountl(s);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](unsigned long m) { return (m & ~s) == 0; });
    if (independent) best = size;
  }
  return best;
}

bool ideals_equal(const IdealPresentation& a, const IdealPresentation& b, long budget) {
  if (!same_ring(a.ring(), b.ring())) throw MismatchError("ideal comparison across different rings");
  IdealPresentation ga = a.has_basis() ? a : groebner(a, budget);
  IdealPresentation gb = b.has_basis() ? b : groebner(b, budget);
  for (const auto& g : b.generators()) {
    if (!ideal_membership(g, ga, budget)) return false;
  }
  for (const auto& g : a.generators()) {
    if (!ideal_membership(g, gb, budget)) return false;
  }
  return true;
}

bool verify_basis(const IdealPresentation& ideal) {
  const auto& basis = ideal.basis();
  const auto& order = ideal.order();
  std::vector<SPoly> sorted;
  for (const auto& g : basis) sorted.push_back(to_sorted(g, order));
  std::vector<const SPoly*> ptrs;
  for (const auto& s : sorted) ptrs.push_back(&s);
  Stepper steps(kDefaultGroebnerBudget * 10, "basis verification");
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (!reduce_full(s_polynomial(sorted[i], sorted[j], order), ptrs, order, steps).empty()) return false;
    }
  }
  for (const auto& g : ideal.work_generators()) {
    if (!reduce_full(to_sorted(g, order), ptrs, order, steps).empty()) return false;
  }
  return true;
}

}  // namespace nilshift
