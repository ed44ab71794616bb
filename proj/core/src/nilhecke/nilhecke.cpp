#include "nilshift/nilhecke/nilhecke.hpp"

#include "nilshift/symbolic/errors.hpp"
#include "nilshift/symbolic/parse.hpp"

namespace nilshift {

NilHeckeElement::NilHeckeElement(DatumPtr datum) : datum_(std::move(datum)) {}

NilHeckeElement::NilHeckeElement(const AffineWeylElement& a, const RatFunc& f) : datum_(a.datum()) {
  add_term(a, f);
}

NilHeckeElement NilHeckeElement::basis(const AffineWeylElement& a) {
  return NilHeckeElement(a, RatFunc(a.datum()->ring(), 1));
}

NilHeckeElement NilHeckeElement::scalar(DatumPtr datum, const RatFunc& f) {
  return NilHeckeElement(AffineWeylElement::identity(std::move(datum)), f);
}

NilHeckeElement NilHeckeElement::one(DatumPtr datum) {
  auto id = AffineWeylElement::identity(datum);
  return NilHeckeElement(id, RatFunc(datum->ring(), 1));
}

RatFunc NilHeckeElement::coefficient(const AffineWeylElement& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? RatFunc(datum_->ring()) : it->second;
}

void NilHeckeElement::add_term(const AffineWeylElement& a, const RatFunc& f) {
  if (!datum_) datum_ = a.datum();
  if (!(*datum_ == *a.datum())) throw MismatchError("nil-Hecke terms over different root data");
  if (f.is_zero()) return;
  RatFunc g = same_ring(f.ring(), datum_->ring()) ? f : f.embed(datum_->ring());
  auto [it, inserted] = terms_.emplace(a, g);
  if (!inserted) {
    it->second += g;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NilHeckeElement NilHeckeElement::operator-() const {
  NilHeckeElement r(*this);
  for (auto& [a, f] : r.terms_) f = -f;
  return r;
}

NilHeckeElement& NilHeckeElement::operator+=(const NilHeckeElement& o) {
  if (datum_ && o.datum_ && !(*datum_ == *o.datum_)) throw MismatchError("nil-Hecke elements over different root data");
  if (!datum_) datum_ = o.datum_;
  for (const auto& [a, f] : o.terms_) add_term(a, f);
  return *this;
}

NilHeckeElement& NilHeckeElement::operator-=(const NilHeckeElement& o) { return *this += -o; }

NilHeckeElement operator*(const RatFunc& f, const NilHeckeElement& x) {
  NilHeckeElement r(x.datum_);
  for (const auto& [a, c] : x.terms_) r.add_term(a, f * c);
  return r;
}

NilHeckeElement operator*(const Rational& c, const NilHeckeElement& x) {
  NilHeckeElement r(x.datum_);
  for (const auto& [a, f] : x.terms_) r.add_term(a, f * c);
  return r;
}

std::string NilHeckeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, f] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + f.to_string() + ")*e[" + a.to_string() + "]";
  }
  return s;
}

NilHeckeElement NilHeckeElement::parse(DatumPtr datum, const std::string& text) {
  NilHeckeElement r(datum);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip();
  if (text.substr(pos) == "0") return r;
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' in nil-Hecke element at " + std::to_string(pos));
    int depth = 0;
    std::size_t start = pos;
    for (; pos < text.size(); ++pos) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')' && --depth == 0) break;
    }
    if (pos >= text.size()) throw ParseError("unbalanced parentheses in nil-Hecke element");
    std::string coef = text.substr(start + 1, pos - start - 1);
    ++pos;
    if (text.compare(pos, 3, "*e[") != 0) throw ParseError("expected '*e[' in nil-Hecke element");
    pos += 3;
    auto close = text.find(']', pos);
    if (close == std::string::npos) throw ParseError("expected ']' in nil-Hecke element");
    auto a = AffineWeylElement::parse(datum, text.substr(pos, close - pos));
    r.add_term(a, parse_ratfunc(coef, datum->ring()));
    pos = close + 1;
    skip();
    if (pos < text.size()) {
      if (text[pos] != '+') throw ParseError("expected '+' between nil-Hecke terms");
      ++pos;
      skip();
    }
  }
  return r;
}

NilHeckeElement convolve(const NilHeckeElement& x, const NilHeckeElement& y) {
  if (x.datum() && y.datum() && !(*x.datum() == *y.datum())) {
    throw MismatchError("convolution of elements over different root data");
  }
  NilHeckeElement r(x.datum() ? x.datum() : y.datum());
  for (const auto& [a, f1] : x.terms()) {
    Twist A = twist_automorphism(a);
    for (const auto& [b, f2] : y.terms()) r.add_term(a * b, f1 * A(f2));
  }
  return r;
}

NilHeckeElement demazure(const DatumPtr& datum, std::size_t i) {
  if (i >= datum->num_simple()) throw MismatchError("simple reflection index out of range");
  auto id = AffineWeylElement::identity(datum);
  auto s = AffineWeylElement::simple_reflection(datum, i);
  RatFunc alpha = datum->character_poly(datum->simple_root(i));
  NilHeckeElement diff = NilHeckeElement::basis(id) - NilHeckeElement::basis(s);
  return convolve(diff, NilHeckeElement::scalar(datum, alpha.inverse()));
}

NilHeckeElement symmetrizer(const DatumPtr& datum) {
  const auto& W = datum->weyl_elements();
  Rational c(1, static_cast<long>(W.size()));
  NilHeckeElement r(datum);
  for (const auto& w : W) r.add_term(AffineWeylElement::weyl(datum, w), RatFunc(datum->ring(), c));
  return r;
}

NilHeckeElement symmetrize(const NilHeckeElement& x) {
  NilHeckeElement e = symmetrizer(x.datum());
  return convolve(convolve(e, x), e);
}

NilHeckeElement u_reduce(const NilHeckeElement& x) {
  NilHeckeElement r(x.datum());
  std::size_t u = x.datum()->u_index();
  for (const auto& [a, f] : x.terms()) {
    try {
      r.add_term(a, f.evaluate(u, 0));
    } catch (const MathError& err) {
      throw MathError("coefficient of e[" + a.to_string() + "] has a pole at u=0: " + f.to_string());
    }
  }
  return r;
}

NilHeckeElement divide_by_u_at_zero(const NilHeckeElement& x) {
  NilHeckeElement r(x.datum());
  std::size_t u = x.datum()->u_index();
  RatFunc uvar = RatFunc::variable(x.datum()->ring(), "u");
  for (const auto& [a, f] : x.terms()) {
    RatFunc at0;
    try {
      at0 = f.evaluate(u, 0);
    } catch (const MathError&) {
      throw MathError("coefficient of e[" + a.to_string() + "] has a pole at u=0: " + f.to_string());
    }
    if (!at0.is_zero()) {
      throw MathError("commutator not divisible by u at e[" + a.to_string() + "]: " + f.to_string());
    }
    try {
      r.add_term(a, (f / uvar).evaluate(u, 0));
    } catch (const MathError&) {
      throw MathError("commutator not divisible by u at e[" + a.to_string() + "]: " + f.to_string());
    }
  }
  return r;
}

NilHeckeElement poisson_bracket_first_order(const NilHeckeElement& a, const NilHeckeElement& b) {
  u_reduce(a);
  u_reduce(b);
  return divide_by_u_at_zero(convolve(a, b) - convolve(b, a));
}

}  // namespace nilshift
