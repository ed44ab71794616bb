#include "nilshift/symbolic/ratfunc.hpp"

#include <algorithm>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

RatFunc::RatFunc(RingPtr ring) : num_(ring), den_(ring, Rational(1)) {}

RatFunc::RatFunc(RingPtr ring, const Rational& c) : num_(ring, c), den_(ring, Rational(1)) {}

RatFunc::RatFunc(const Polynomial& p) : num_(p), den_(p.ring(), Rational(1)) {}

RatFunc::RatFunc(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero();
  if (!num_.ring()) num_ = Polynomial(den_.ring());
  if (!same_ring(num_.ring(), den_.ring())) throw MismatchError("numerator and denominator in different rings");
  normalize(true);
}

RatFunc RatFunc::variable(RingPtr ring, std::string_view name, int power) {
  return RatFunc(Polynomial::variable(std::move(ring), name, power));
}

void RatFunc::normalize(bool reduce) {
  if (num_.is_zero()) {
    den_ = Polynomial(num_.ring(), Rational(1));
    return;
  }
  if (den_.is_constant()) {
    num_ *= Rational(1) / den_.constant_value();
    den_ = Polynomial(num_.ring(), Rational(1));
    return;
  }
  if (reduce) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  const RingPtr& ring = den_.ring();
  auto [d, m] = den_.split_monomial();
  Exponent move(m.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (ring->laurent(i) && m[i] != 0) {
      move[i] = -m[i];
      any = true;
    } else {
      move[i] = 0;
    }
  }
  if (any) {
    Polynomial mono = Polynomial::monomial(ring, move, 1);
    num_ = num_ * mono;
    den_ = den_ * mono;
  }
  if (den_.is_constant()) {
    num_ *= Rational(1) / den_.constant_value();
    den_ = Polynomial(ring, Rational(1));
    return;
  }
  Rational scale = Rational(1) / den_.content();
  if (den_.terms().rbegin()->second < 0) scale = -scale;
  if (scale != 1) {
    num_ *= scale;
    den_ *= scale;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw MathError("rational function is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

const Polynomial& RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw MathError("rational function has a nontrivial denominator: " + to_string());
  return num_;
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (!ring() || is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize(!den_.is_constant());
    return *this;
  }
  if (o.den_.is_constant()) {
    num_ += o.num_ * den_;
    normalize(false);
    return *this;
  }
  if (den_.is_constant()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalize(false);
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  Polynomial db = *divide_exact(den_, g);
  Polynomial dd = *divide_exact(o.den_, g);
  num_ = num_ * dd + o.num_ * db;
  den_ = den_ * dd;
  normalize(true);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (!ring()) return *this;
  if (!o.ring()) return *this = RatFunc(ring());
  if (is_zero() || o.is_zero()) return *this = RatFunc(ring());
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    Polynomial g = gcd(a, d);
    if (!g.is_constant()) {
      a = *divide_exact(a, g);
      d = *divide_exact(d, g);
    }
  }
  if (!b.is_constant()) {
    Polynomial g = gcd(c, b);
    if (!g.is_constant()) {
      c = *divide_exact(c, g);
      b = *divide_exact(b, g);
    }
  }
  num_ = a * c;
  den_ = b * d;
  normalize(false);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc& RatFunc::operator*=(const Rational& c) {
  num_ *= c;
  if (c == 0) den_ = Polynomial(num_.ring(), Rational(1));
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize(false);
  return r;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  if (!r.num_.ring()) r.num_ = Polynomial(den_.ring(), Rational(1));
  r.normalize(false);
  return r;
}

bool RatFunc::operator<(const RatFunc& o) const {
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

RatFunc substitute_into(const Polynomial& p, const std::map<std::size_t, RatFunc>& images,
                        const RingPtr& target) {
  if (p.is_zero()) return RatFunc(target);
  std::map<std::size_t, Polynomial> nums;
  bool simple = true;
  for (const auto& [i, img] : images) {
    if (!img.is_zero() && !same_ring(img.ring(), target)) {
      throw MismatchError("substitution image not in target ring " + target->describe());
    }
    bool neg = p.min_degree(i) < 0;
    if (!img.is_polynomial() || (neg && !(img.num().is_monomial()))) simple = false;
    nums.emplace(i, img.is_zero() ? Polynomial(target) : img.num());
  }
  if (simple) return RatFunc(p.substitute(nums, target));
  // Homogenize: x_i = n_i/d_i with exponents in [lo_i, hi_i].
  std::map<std::size_t, Polynomial> scaled_num, scaled_den;
  Polynomial den(target, Rational(1));
  std::map<std::size_t, std::pair<int, int>> range;
  for (const auto& [i, img] : images) {
    int lo = std::min(p.min_degree(i), 0), hi = std::max(p.degree(i), 0);
    range[i] = {lo, hi};
    if (lo < 0 && img.is_zero()) throw DivisionByZero("negative power of a variable substituted by zero");
    Polynomial n = img.is_zero() ? Polynomial(target) : img.num();
    Polynomial d = img.is_zero() ? Polynomial(target, Rational(1)) : img.den();
    den = den * n.pow(-lo) * d.pow(hi);
    scaled_num.emplace(i, n);
    scaled_den.emplace(i, d);
  }
  std::vector<int> keep(p.ring()->size(), -1);
  for (std::size_t i = 0; i < p.ring()->size(); ++i) {
    if (!images.count(i) && p.involves(i)) keep[i] = target->require(p.ring()->name(i));
  }
  std::map<std::tuple<std::size_t, int, bool>, Polynomial> cache;
  auto power = [&](std::size_t i, int k, bool numer) -> const Polynomial& {
    auto key = std::make_tuple(i, k, numer);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Polynomial& base = numer ? scaled_num.at(i) : scaled_den.at(i);
    return cache.emplace(key, base.pow(k)).first->second;
  };
  Polynomial num(target);
  for (const auto& [e, c] : p.terms()) {
    Exponent base(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (keep[i] >= 0) base[keep[i]] += e[i];
    }
    Polynomial term = Polynomial::monomial(target, base, c);
    for (const auto& [i, r] : range) {
      int k = e[i];
      if (k - r.first != 0) term = term * power(i, k - r.first, true);
      if (r.second - k != 0) term = term * power(i, r.second - k, false);
    }
    num += term;
  }
  if (den.is_zero()) throw DivisionByZero("substitution produced a zero denominator");
  return RatFunc(num, den);
}

RatFunc RatFunc::substitute(const std::map<std::size_t, RatFunc>& images, const RingPtr& target) const {
  if (!ring()) return RatFunc(target);
  RatFunc n = substitute_into(num_, images, target);
  if (den_.is_constant()) return n * (Rational(1) / den_.constant_value());
  RatFunc d = substitute_into(den_, images, target);
  if (d.is_zero()) {
    throw MathError("denominator " + den_.to_string() + " vanishes under substitution");
  }
  return n / d;
}

RatFunc RatFunc::evaluate(std::size_t var, const Rational& value) const {
  if (!ring()) return *this;
  if (value == 0 && (num_.min_degree(var) < 0)) {
    throw MathError("pole at " + ring()->name(var) + "=0 in " + to_string());
  }
  Polynomial d = den_.evaluate(var, value);
  if (d.is_zero()) {
    throw MathError("denominator " + den_.to_string() + " vanishes at " + ring()->name(var) + "=" +
                    value.get_str());
  }
  return RatFunc(num_.evaluate(var, value), d);
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (!ring()) return *this;
  if (den_.is_constant()) return RatFunc(num_.derivative(var));
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::embed(const RingPtr& target) const {
  if (!ring()) return RatFunc(target);
  RatFunc r;
  r.num_ = num_.embed(target);
  r.den_ = den_.embed(target);
  r.normalize(false);
  return r;
}

std::string RatFunc::to_string() const {
  if (!ring() || den_.is_constant()) return num_.to_string();
  auto wrap = [](const Polynomial& p) {
    std::string s = p.to_string();
    return p.nterms() > 1 || s.find_first_of("*^") != std::string::npos || s[0] == '-' ? "(" + s + ")"
                                                                                        : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::string to_string(const RatFunc& f) { return f.to_string(); }

}  // namespace nilshift
