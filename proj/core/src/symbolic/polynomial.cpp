#include "nilshift/symbolic/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

namespace {

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

void check_exponent(const PolyRing& ring, const Exponent& e) {
  if (e.size() != ring.size()) throw MismatchError("exponent length does not match ring " + ring.describe());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 && !ring.laurent(i)) {
      throw MathError("negative exponent on polynomial variable '" + ring.name(i) + "'");
    }
  }
}

}  // namespace

bool print_order_less(const Exponent& a, const Exponent& b) {
  int ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
  if (c == 0) return;
  if (!ring_) throw MismatchError("nonzero constant without a ring");
  terms_.emplace(Exponent(ring_->size(), 0), c);
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name, int power) {
  std::size_t i = static_cast<std::size_t>(ring->require(name));
  return variable(std::move(ring), i, power);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index, int power) {
  Exponent e(ring->size(), 0);
  e.at(index) = power;
  return monomial(std::move(ring), std::move(e), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Exponent e, const Rational& c) {
  check_exponent(*ring, e);
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw MathError("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Polynomial::coefficient_of(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::adopt(const Polynomial& o) {
  if (!ring_) {
    ring_ = o.ring_;
    return;
  }
  if (o.ring_ && !same_ring(ring_, o.ring_)) {
    throw MismatchError("polynomials live in different rings " + ring_->describe() + " and " +
                        o.ring_->describe());
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.ring_);
  r.adopt(b);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(add_exp(ea, eb), ca * cb);
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (!same_ring(ring_, o.ring_)) return false;
  return terms_ == o.terms_;
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
  auto ia = terms_.begin();
  auto ib = o.terms_.begin();
  for (; ia != terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return print_order_less(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return false;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) {
    if (!is_monomial()) throw MathError("negative power of a non-monomial polynomial: " + to_string());
    const auto& [ex, c] = *terms_.begin();
    Exponent ne(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) ne[i] = ex[i] * e;
    return monomial(ring_, ne, nilshift::pow(c, e));
  }
  Polynomial out(ring_, Rational(1)), base(*this);
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

int Polynomial::degree(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] > d) d = e[var];
    first = false;
  }
  return d;
}

int Polynomial::min_degree(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] < d) d = e[var];
    first = false;
  }
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int t = total(e);
    if (first || t > d) d = t;
    first = false;
  }
  return d;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] != 0; });
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent ne = e;
    ne[var] -= 1;
    r.add_term(ne, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::coefficient(std::size_t var, int power) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != power) continue;
    Exponent ne = e;
    ne[var] = 0;
    r.add_term(ne, c);
  }
  return r;
}

Polynomial Polynomial::evaluate(std::size_t var, const Rational& value) const {
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne[var] = 0;
    r.add_term(ne, c * nilshift::pow(value, e[var]));
  }
  return r;
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Polynomial>& images,
                                  const RingPtr& target) const {
  if (!ring_) return Polynomial(target);
  std::vector<int> keep(ring_->size(), -1);
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (images.count(i)) continue;
    if (involves(i)) keep[i] = target->require(ring_->name(i));
  }
  for (const auto& [i, img] : images) {
    if (!img.is_zero() && !same_ring(img.ring(), target)) {
      throw MismatchError("substitution image not in target ring " + target->describe());
    }
  }
  std::map<std::pair<std::size_t, int>, Polynomial> cache;
  auto power_of = [&](std::size_t i, int k) -> const Polynomial& {
    auto key = std::make_pair(i, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Polynomial& img = images.at(i);
    Polynomial base = img.ring() ? img : Polynomial(target);
    return cache.emplace(key, base.pow(k)).first->second;
  };
  Polynomial r(target);
  for (const auto& [e, c] : terms_) {
    Exponent base(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (keep[i] >= 0) base[keep[i]] += e[i];
    }
    check_exponent(*target, base);
    Polynomial term = monomial(target, base, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0 && images.count(i)) term = term * power_of(i, e[i]);
    }
    r += term;
  }
  return r;
}

Polynomial Polynomial::embed(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    Polynomial r(*this);
    r.ring_ = target;
    return r;
  }
  return substitute({}, target);
}

std::pair<Exponent, Rational> Polynomial::leading_term() const {
  if (terms_.empty()) throw MathError("leading term of zero polynomial");
  return *terms_.rbegin();
}

std::pair<Polynomial, Exponent> Polynomial::split_monomial() const {
  Exponent m(ring_ ? ring_->size() : 0, 0);
  if (terms_.empty()) return {*this, m};
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = min_degree(i);
  Polynomial r(ring_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] - m[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return {r, m};
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(0);
  Integer num(0), den(1);
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(num, den);
  r.canonicalize();
  return abs(r);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto* t = &*it;
    const Exponent& e = t->first;
    Rational c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const Polynomial& p) { return p.to_string(); }

}  // namespace nilshift
