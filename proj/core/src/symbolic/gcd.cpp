#include <algorithm>

#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/polynomial.hpp"

namespace nilshift {

namespace {

// Divides a by b where both have only non-negative exponents.
std::optional<Polynomial> divide_nonneg(const Polynomial& a, const Polynomial& b) {
  const RingPtr& ring = a.ring() ? a.ring() : b.ring();
  Polynomial q(ring);
  if (a.is_zero()) return q;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (b.degree(i) > a.degree(i)) return std::nullopt;
  }
  const auto& [lb_e, lb_c] = *b.terms().rbegin();
  Polynomial r = a;
  while (!r.is_zero()) {
    const auto& [lr_e, lr_c] = *r.terms().rbegin();
    Exponent m(lr_e.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = lr_e[i] - lb_e[i];
      if (m[i] < 0) return std::nullopt;
    }
    Rational c = lr_c / lb_c;
    Polynomial t = Polynomial::monomial(ring, m, c);
    q += t;
    r -= t * b;
  }
  return q;
}

Polynomial primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Polynomial r = p * (Rational(1) / p.content());
  if (r.terms().rbegin()->second < 0) r = -r;
  return r;
}

Polynomial gcd_nonneg(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, std::size_t x) {
  Polynomial g(p.ring());
  int lo = p.min_degree(x), hi = p.degree(x);
  for (int k = hi; k >= lo; --k) {
    Polynomial c = p.coefficient(x, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive(c) : gcd_nonneg(g, c);
    if (g.is_constant()) return Polynomial(p.ring(), Rational(1));
  }
  return g;
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& b, std::size_t x) {
  int d = b.degree(x);
  Polynomial lc = b.coefficient(x, d);
  while (!r.is_zero() && r.degree(x) >= d) {
    int k = r.degree(x);
    Polynomial lr = r.coefficient(x, k);
    r = lc * r - lr * Polynomial::variable(r.ring(), x, k - d) * b;
    if (!r.is_zero()) r *= Rational(1) / r.content();
  }
  return r;
}

// Coefficients (by x-degree) of p after setting every other variable to pt.
std::vector<Rational> specialize(const Polynomial& p, std::size_t x, const std::vector<Rational>& pt) {
  std::vector<Rational> out(static_cast<std::size_t>(p.degree(x)) + 1);
  for (const auto& [e, c] : p.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != x && e[i] != 0) v *= pow(pt[i], e[i]);
    }
    out[static_cast<std::size_t>(e[x])] += v;
  }
  return out;
}

void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Upper bound for deg_x gcd(a, b) from one specialization of the other variables.
int degree_bound(const Polynomial& a, const Polynomial& b, std::size_t x) {
  std::size_t n = a.ring()->size();
  Polynomial la = a.coefficient(x, a.degree(x)), lb = b.coefficient(x, b.degree(x));
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Rational> pt(n);
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = Rational(static_cast<long>(3 + 7 * i + 13 * attempt + (i * i + attempt) % 5), 1 + attempt);
    }
    auto sa = specialize(a, x, pt), sb = specialize(b, x, pt);
    if (sa.back() == 0 || sb.back() == 0) continue;
    return univariate_gcd_degree(std::move(sa), std::move(sb));
  }
  return std::min(a.degree(x), b.degree(x));
}

Polynomial gcd_nonneg(const Polynomial& a, const Polynomial& b) {
  const RingPtr& ring = a.ring();
  Polynomial one(ring, Rational(1));
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return one;
  if (a.nterms() >= b.nterms()) {
    if (divide_nonneg(a, b)) return primitive(b);
  } else {
    if (divide_nonneg(b, a)) return primitive(a);
  }
  // A variable that cannot occur in the gcd splits the problem into coefficient gcds.
  int best = -1, best_bound = 0;
  for (std::size_t x = 0; x < ring->size(); ++x) {
    bool ia = a.involves(x), ib = b.involves(x);
    if (!ia && !ib) continue;
    int bound = (ia && ib) ? degree_bound(a, b, x) : 0;
    if (bound == 0) {
      Polynomial g(ring);
      for (const Polynomial* p : {&a, &b}) {
        for (int k = p->degree(x); k >= 0; --k) {
          Polynomial c = p->coefficient(x, k);
          if (c.is_zero()) continue;
          g = g.is_zero() ? primitive(c) : gcd_nonneg(g, c);
          if (g.is_constant()) return one;
        }
      }
      return primitive(g);
    }
    if (best < 0 || bound < best_bound) {
      best = static_cast<int>(x);
      best_bound = bound;
    }
  }
  std::size_t ux = static_cast<std::size_t>(best);
  Polynomial ca = content_in(a, ux), cb = content_in(b, ux);
  Polynomial c = gcd_nonneg(ca, cb);
  Polynomial pa = *divide_nonneg(a, ca);
  Polynomial pb = *divide_nonneg(b, cb);
  if (pa.degree(ux) < pb.degree(ux)) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, ux);
    if (r.is_zero()) break;
    if (r.degree(ux) == 0) {
      pb = one;
      break;
    }
    pa = pb;
    pb = *divide_nonneg(r, content_in(r, ux));
  }
  return primitive(c * pb);
}

}  // namespace

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Polynomial(b.ring());
  if (!same_ring(a.ring(), b.ring())) throw MismatchError("divide_exact across different rings");
  auto [pa, ma] = a.split_monomial();
  auto [pb, mb] = b.split_monomial();
  auto q = divide_nonneg(pa, pb);
  if (!q) return std::nullopt;
  Exponent m(ma.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = ma[i] - mb[i];
    if (m[i] < 0 && !a.ring()->laurent(i)) return std::nullopt;
  }
  return *q * Polynomial::monomial(a.ring(), m, 1);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return a.ring() ? a : b;
  if (a.is_zero()) return gcd(b, b);
  if (b.is_zero()) return gcd(a, a);
  if (!same_ring(a.ring(), b.ring())) throw MismatchError("gcd across different rings");
  const RingPtr& ring = a.ring();
  auto [pa, ma] = a.split_monomial();
  auto [pb, mb] = b.split_monomial();
  Exponent m(ma.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!ring->laurent(i)) m[i] = std::min(ma[i], mb[i]);
  }
  Polynomial g = gcd_nonneg(pa, pb);
  return g * Polynomial::monomial(ring, m, 1);
}

}  // namespace nilshift
