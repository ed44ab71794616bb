#include "nilshift/qh/qh.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

namespace {

struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const { return order->compare(a, b) < 0; }
};

bool divides(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Monomials not divisible by any lead, by breadth-first growth from 1.
std::vector<std::vector<int>> standard_monomials(const std::vector<std::vector<int>>& leads, std::size_t n,
                                                 std::size_t limit) {
  auto reducible = [&](const std::vector<int>& m) {
    return std::any_of(leads.begin(), leads.end(), [&](const auto& l) { return divides(l, m); });
  };
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  std::vector<int> one(n, 0);
  if (reducible(one)) return out;
  queue.push_back(one);
  seen.insert(one);
  while (!queue.empty()) {
    auto m = queue.front();
    queue.pop_front();
    out.push_back(m);
    if (out.size() > limit) throw MathError("quotient is not finite over the coefficient field");
    for (std::size_t i = 0; i < n; ++i) {
      auto next = m;
      ++next[i];
      if (seen.count(next) || reducible(next)) continue;
      seen.insert(next);
      queue.push_back(next);
    }
  }
  return out;
}

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

/// Minimal subsets of rays not spanning a cone.
std::vector<std::vector<std::size_t>> primitive_collections(const ToricData& fan) {
  std::size_t N = fan.rays.size();
  std::vector<std::set<std::size_t>> cones;
  for (const auto& c : fan.cones) cones.emplace_back(c.begin(), c.end());
  auto is_face = [&](const std::set<std::size_t>& s) {
    return std::any_of(cones.begin(), cones.end(),
                       [&](const auto& c) { return std::includes(c.begin(), c.end(), s.begin(), s.end()); });
  };
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 2; k <= std::min(N, fan.rank + 1); ++k) {
    std::vector<bool> pick(N, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::set<std::size_t> s;
      for (std::size_t i = 0; i < N; ++i)
        if (pick[i]) s.insert(i);
      if (is_face(s)) continue;
      bool minimal = true;
      for (auto x : s) {
        auto t = s;
        t.erase(x);
        if (!is_face(t)) minimal = false;
      }
      if (minimal) out.emplace_back(s.begin(), s.end());
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace

QHModule QHModule::build(const ToricData& input, long budget) {
  input.validate();
  QHModule m;
  m.fan_ = input.normalized();
  const auto& fan = m.fan_;
  const std::size_t r = fan.rank;
  const std::size_t N = fan.rays.size();

  m.datum_ = r == 0 ? std::make_shared<const RootDatum>(std::vector<RootDatum::Factor>{})
                    : std::make_shared<const RootDatum>(
                          std::vector<RootDatum::Factor>{{RootDatum::Factor::Kind::Torus, static_cast<int>(r)}});
  auto cvars = m.datum_->ring()->vars();
  m.q_index_ = cvars.size();
  cvars.push_back({"q", true});
  m.coeff_ = PolyRing::make(cvars);

  // Jacobian presentation in Q[z^{±1}.., q, u, h..].
  std::vector<PolyRing::Var> pvars;
  for (std::size_t i = 0; i < r; ++i) pvars.push_back({r == 1 ? "z" : "z" + std::to_string(i + 1), true});
  pvars.push_back({"q", false});
  for (const auto& v : m.datum_->ring()->vars()) pvars.push_back(v);
  m.pres_ring_ = PolyRing::make(pvars);
  const auto& P = m.pres_ring_;
  auto zmono = [&](const std::vector<int>& a, int qpow) {
    Exponent e(P->size(), 0);
    for (std::size_t i = 0; i < r; ++i) e[i] = a[i];
    e[r] = qpow;
    return Polynomial::monomial(P, e);
  };
  m.potential_ = Polynomial(P);
  for (const auto& v : fan.rays) m.potential_ += zmono(v, 1);
  std::vector<Polynomial> rels;
  for (std::size_t i = 0; i < r; ++i) {
    Polynomial g = -Polynomial::variable(P, r + 2 + i);
    for (const auto& v : fan.rays)
      if (v[i] != 0) g -= zmono(v, 1) * Rational(v[i]);
    g = g.split_monomial().first;
    if (g.leading_term().second < 0) g = -g;
    rels.push_back(g);
  }
  m.pres_ = groebner(IdealPresentation(P, rels), budget);

  // Divisor presentation in Q[D.., q, h..].
  std::vector<PolyRing::Var> dvars;
  for (std::size_t rho = 0; rho < N; ++rho) dvars.push_back({"D" + std::to_string(rho), false});
  dvars.push_back({"q", false});
  for (std::size_t k = 0; k < r; ++k) dvars.push_back({m.datum_->h_name(k), false});
  m.dring_ = PolyRing::make(dvars);
  const auto& Dr = m.dring_;
  auto dmono = [&](const std::vector<int>& beta, int qpow) {
    Exponent e(Dr->size(), 0);
    for (std::size_t rho = 0; rho < N; ++rho) e[rho] = beta[rho];
    e[N] = qpow;
    return Polynomial::monomial(Dr, e);
  };
  std::vector<Polynomial> dgens;
  for (std::size_t i = 0; i < r; ++i) {
    Polynomial g = Polynomial::variable(Dr, N + 1 + i);
    for (std::size_t rho = 0; rho < N; ++rho)
      if (fan.rays[rho][i] != 0) g += Polynomial::variable(Dr, rho) * Rational(fan.rays[rho][i]);
    dgens.push_back(g);
  }
  for (const auto& pc : primitive_collections(fan)) {
    std::vector<int> beta(N, 0), s(r, 0);
    for (auto rho : pc) {
      beta[rho] = 1;
      for (std::size_t i = 0; i < r; ++i) s[i] += fan.rays[rho][i];
    }
    std::vector<int> gamma(N, 0);
    if (std::any_of(s.begin(), s.end(), [](int x) { return x != 0; })) {
      bool found = false;
      for (std::size_t p = 0; p < fan.cones.size() && !found; ++p) {
        auto c = fan.cone_matrix(p).inverse() * s;
        if (std::any_of(c.begin(), c.end(), [](int x) { return x < 0; })) continue;
        for (std::size_t k = 0; k < r; ++k) gamma[fan.cones[p][k]] = c[k];
        found = true;
      }
      if (!found) throw MathError("fan '" + fan.name + "' is not complete");
    }
    int k = total(beta) - total(gamma);
    if (k <= 0) throw MathError("fan '" + fan.name + "' is not monotone: primitive relation of degree " + std::to_string(k));
    dgens.push_back(dmono(beta, 0) - dmono(gamma, k));
  }
  std::vector<std::size_t> dblock, pblock;
  for (std::size_t rho = 0; rho < N; ++rho) dblock.push_back(rho);
  for (std::size_t i = N; i < Dr->size(); ++i) pblock.push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  if (!dblock.empty()) blocks.push_back(dblock);
  blocks.push_back(pblock);
  m.dpres_ = groebner(IdealPresentation(Dr, dgens), MonomialOrder("block[D]>[q,h]", blocks), budget);

  // The same basis over F_R(q): group terms by their D exponent.
  m.dorder_ = MonomialOrder::grevlex(N);
  OrderLess less{&m.dorder_};
  auto to_coeff_exp = [&](const Exponent& e) {
    Exponent pe(m.coeff_->size(), 0);
    pe[m.q_index_] = e[N];
    for (std::size_t k = 0; k < r; ++k) pe[k + 1] = e[N + 1 + k];
    return pe;
  };
  for (const auto& g : m.dpres_.basis()) {
    std::map<std::vector<int>, Polynomial> grouped;
    for (const auto& [e, c] : g.terms()) {
      std::vector<int> d(e.begin(), e.begin() + static_cast<long>(N));
      auto [it, ins] = grouped.emplace(d, Polynomial(m.coeff_));
      it->second.add_term(to_coeff_exp(e), c);
    }
    std::vector<int> lead = grouped.begin()->first;
    for (const auto& [d, c] : grouped)
      if (less(lead, d)) lead = d;
    if (std::all_of(lead.begin(), lead.end(), [](int x) { return x == 0; })) {
      throw MathError("presentation of '" + fan.name + "' degenerates over the coefficient field");
    }
    RatFunc lc(grouped.at(lead));
    KPoly kp;
    kp.lead = lead;
    for (const auto& [d, c] : grouped)
      if (d != lead) kp.terms.emplace(d, RatFunc(c) / lc);
    m.kbasis_.push_back(std::move(kp));
  }
  for (std::size_t v = 0; v < N; ++v) {
    bool pure = std::any_of(m.kbasis_.begin(), m.kbasis_.end(), [&](const KPoly& kp) {
      for (std::size_t i = 0; i < N; ++i)
        if ((i == v) != (kp.lead[i] > 0)) return false;
      return true;
    });
    if (!pure) throw MathError("quotient for '" + fan.name + "' is not finite over the coefficient field");
  }
  std::vector<std::vector<int>> leads;
  for (const auto& kp : m.kbasis_) leads.push_back(kp.lead);
  m.basis_ = standard_monomials(leads, N, 4096);
  std::sort(m.basis_.begin(), m.basis_.end(), [](const auto& a, const auto& b) {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a > b;
  });
  if (m.basis_.size() != fan.num_fixed_points()) {
    throw MathError("module rank mismatch for '" + fan.name + "': " + std::to_string(m.basis_.size()) +
                    " basis monomials, " + std::to_string(fan.num_fixed_points()) + " fixed points");
  }
  for (std::size_t k = 0; k < m.basis_.size(); ++k) m.basis_index_[m.basis_[k]] = k;
  const std::size_t n = m.basis_.size();

  for (std::size_t rho = 0; rho < N; ++rho) {
    Matrix mr(m.coeff_, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      auto beta = m.basis_[j];
      ++beta[rho];
      Vec col = m.nf_coords({{beta, RatFunc(m.coeff_, 1)}});
      for (std::size_t i = 0; i < n; ++i) mr(i, j) = col[i];
    }
    m.divisor_mult_.push_back(std::move(mr));
  }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      if (m.divisor_mult_[a] * m.divisor_mult_[b] != m.divisor_mult_[b] * m.divisor_mult_[a]) {
        throw MathError("divisor multiplications do not commute for '" + fan.name + "'");
      }
  for (std::size_t k = 0; k < n; ++k) {
    Matrix mk = Matrix::identity(m.coeff_, n);
    for (std::size_t rho = 0; rho < N; ++rho)
      for (int e = 0; e < m.basis_[k][rho]; ++e) mk = m.divisor_mult_[rho] * mk;
    m.mult_.push_back(std::move(mk));
  }

  // z_k = D_{ρ_k} / q for the rays of the first (standard) cone.
  RatFunc qinv = RatFunc::variable(m.coeff_, "q").inverse();
  for (std::size_t k = 0; k < r; ++k) {
    m.z_mult_.push_back(m.divisor_mult_[fan.cones[0][k]] * qinv);
    m.z_inv_mult_.push_back(m.z_mult_.back().inverse());
  }
  // Every Jacobian relation must vanish in the module.
  for (const auto& g : rels) {
    Vec v = m.coords(g);
    if (std::any_of(v.begin(), v.end(), [](const RatFunc& x) { return !x.is_zero(); })) {
      throw MathError("Jacobian relation " + g.to_string() + " does not vanish on the divisor presentation");
    }
  }

  m.c1_ = m.zero();
  for (std::size_t rho = 0; rho < N; ++rho) {
    Vec d = m.divisor(rho);
    for (std::size_t i = 0; i < n; ++i) m.c1_[i] += d[i];
  }
  m.c1_matrix_ = m.mul_matrix(m.c1_);

  m.restriction_ = Matrix(m.coeff_, n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      RatFunc v(m.coeff_, 1);
      for (std::size_t rho = 0; rho < N; ++rho)
        if (m.basis_[i][rho] != 0) v *= m.divisor_restriction(rho, p).pow(m.basis_[i][rho]);
      m.restriction_(p, i) = v;
    }
  }
  try {
    m.restriction_inverse_ = m.restriction_.inverse();
  } catch (const MathError&) {
    m.restriction_det_ = m.restriction_.determinant().to_string();
  }
  return m;
}

int QHModule::degree(std::size_t i) const { return total(basis_.at(i)); }

std::string QHModule::basis_name(std::size_t i) const {
  std::string s;
  const auto& b = basis_.at(i);
  for (std::size_t rho = 0; rho < b.size(); ++rho) {
    if (b[rho] == 0) continue;
    if (!s.empty()) s += "*";
    s += "D" + std::to_string(rho);
    if (b[rho] != 1) s += "^" + std::to_string(b[rho]);
  }
  return s.empty() ? "1" : s;
}

Vec QHModule::zero() const { return Vec(rank(), RatFunc(coeff_)); }

Vec QHModule::unit() const { return basis_vector(0); }

Vec QHModule::basis_vector(std::size_t i) const {
  Vec v = zero();
  v.at(i) = RatFunc(coeff_, 1);
  return v;
}

Vec QHModule::nf_coords(const std::map<std::vector<int>, RatFunc>& f) const {
  OrderLess less{&dorder_};
  std::map<std::vector<int>, RatFunc, OrderLess> work(less);
  auto add = [&](const std::vector<int>& e, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, ins] = work.emplace(e, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [e, c] : f) add(e, same_ring(c.ring(), coeff_) ? c : c.embed(coeff_));
  Vec out = zero();
  while (!work.empty()) {
    auto it = std::prev(work.end());
    std::vector<int> mexp = it->first;
    RatFunc c = it->second;
    work.erase(it);
    const KPoly* div = nullptr;
    for (const auto& kp : kbasis_)
      if (divides(kp.lead, mexp)) {
        div = &kp;
        break;
      }
    if (!div) {
      out.at(basis_index_.at(mexp)) += c;
      continue;
    }
    for (const auto& [e, gc] : div->terms) {
      std::vector<int> shifted(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + mexp[i] - div->lead[i];
      add(shifted, -(c * gc));
    }
  }
  return out;
}

Vec QHModule::monomial_coords(const std::vector<int>& a) const {
  if (a.size() != fan_.rank) throw MismatchError("z-exponent of wrong length");
  Vec v = unit();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Matrix& step = a[k] >= 0 ? z_mult_[k] : z_inv_mult_[k];
    for (int e = 0; e < std::abs(a[k]); ++e) v = step * v;
  }
  return v;
}

Vec QHModule::coords(const ZPoly& f) const {
  Vec out = zero();
  for (const auto& [a, c] : f) {
    if (c.is_zero()) continue;
    Vec v = monomial_coords(a);
    RatFunc cc = same_ring(c.ring(), coeff_) ? c : c.embed(coeff_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += cc * v[i];
  }
  return out;
}

Vec QHModule::coords(const Polynomial& f) const {
  if (!same_ring(f.ring(), pres_ring_)) throw MismatchError("class polynomial not in the presentation ring");
  const std::size_t r = fan_.rank;
  ZPoly z;
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> a(e.begin(), e.begin() + static_cast<long>(r));
    Exponent pe(coeff_->size(), 0);
    pe[q_index_] = e[r];
    pe[0] = e[r + 1];
    for (std::size_t k = 0; k < r; ++k) pe[k + 1] = e[r + 2 + k];
    RatFunc term(Polynomial::monomial(coeff_, pe, c));
    auto [it, ins] = z.emplace(a, term);
    if (!ins) it->second += term;
  }
  return coords(z);
}

Vec QHModule::z_class(const std::vector<int>& sigma) const {
  if (sigma.size() != fan_.rank) throw MismatchError("co-character of wrong rank");
  return coords(ZPoly{{sigma, RatFunc(coeff_, 1)}});
}

Vec QHModule::divisor(std::size_t rho) const {
  return coords(ZPoly{{fan_.rays.at(rho), RatFunc::variable(coeff_, "q")}});
}

Matrix QHModule::mul_matrix(const Vec& a) const {
  Matrix out(coeff_, rank(), rank());
  for (std::size_t k = 0; k < rank(); ++k)
    if (!a.at(k).is_zero()) out = out + mult_[k] * a[k];
  return out;
}

Vec QHModule::mul(const Vec& a, const Vec& b) const { return mul_matrix(a) * b; }

Vec QHModule::connection_apply(const Vec& y) const {
  RatFunc uq = RatFunc::variable(coeff_, "u") * RatFunc::variable(coeff_, "q");
  Vec cy = c1_matrix_ * y;
  Vec out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = uq * y[i].derivative(q_index_) - cy[i];
  return out;
}

RatFunc QHModule::divisor_restriction(std::size_t rho, std::size_t p) const {
  return datum_->character_poly(fan_.divisor_restriction(rho, p)).embed(coeff_);
}

Vec QHModule::fixed_point_decompose(const Vec& y) const { return restriction_ * y; }

Vec QHModule::fixed_point_recompose(const Vec& values) const {
  if (restriction_inverse_.rows() == 0) {
    throw MathError("fixed-point restriction is singular; determinant " + restriction_det_);
  }
  return restriction_inverse_ * values;
}

std::string QHModule::to_string(const Vec& y) const {
  std::string s;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + y[i].to_string() + ")*" + basis_name(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace nilshift
