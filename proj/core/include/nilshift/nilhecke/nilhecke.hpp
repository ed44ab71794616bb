#pragma once

#include <map>
#include <string>

#include "nilshift/weyl/weyl.hpp"

namespace nilshift {

/// Element of the localized affine nil-Hecke algebra: sum of f * e[σ;w] with f in F_R.
class NilHeckeElement {
 public:
  using TermMap = std::map<AffineWeylElement, RatFunc>;

  NilHeckeElement() = default;
  explicit NilHeckeElement(DatumPtr datum);
  /// f * e_a
  NilHeckeElement(const AffineWeylElement& a, const RatFunc& f);
  static NilHeckeElement basis(const AffineWeylElement& a);
  static NilHeckeElement scalar(DatumPtr datum, const RatFunc& f);
  static NilHeckeElement one(DatumPtr datum);

  const DatumPtr& datum() const { return datum_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coefficient(const AffineWeylElement& a) const;

  void add_term(const AffineWeylElement& a, const RatFunc& f);

  NilHeckeElement operator-() const;
  NilHeckeElement& operator+=(const NilHeckeElement& o);
  NilHeckeElement& operator-=(const NilHeckeElement& o);
  friend NilHeckeElement operator+(NilHeckeElement a, const NilHeckeElement& b) { return a += b; }
  friend NilHeckeElement operator-(NilHeckeElement a, const NilHeckeElement& b) { return a -= b; }
  /// Left R-action: multiplies every coefficient by f.
  friend NilHeckeElement operator*(const RatFunc& f, const NilHeckeElement& x);
  friend NilHeckeElement operator*(const Rational& c, const NilHeckeElement& x);

  bool operator==(const NilHeckeElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const NilHeckeElement& o) const { return !(*this == o); }

  /// Canonical form "(f)*e[(σ);word] + ..."; "0" for zero.
  std::string to_string() const;
  static NilHeckeElement parse(DatumPtr datum, const std::string& text);

 private:
  DatumPtr datum_;
  TermMap terms_;
};

/// (f1 e_a) * (f2 e_b) = f1 A_a(f2) e_{ab}, extended bilinearly.
NilHeckeElement convolve(const NilHeckeElement& x, const NilHeckeElement& y);

/// A_i = (e_id - e_{s_i}) * (1/α_i) e_id.
NilHeckeElement demazure(const DatumPtr& datum, std::size_t i);

/// The symmetrizer idempotent (1/|W|) Σ_w e_{0[w]}.
NilHeckeElement symmetrizer(const DatumPtr& datum);

/// e * x * e.
NilHeckeElement symmetrize(const NilHeckeElement& x);

/// Coefficient-wise u = 0; throws MathError naming the basis element on a pole.
NilHeckeElement u_reduce(const NilHeckeElement& x);

/// (a*b - b*a)/u at u = 0; throws MathError if the commutator is not divisible by u.
NilHeckeElement poisson_bracket_first_order(const NilHeckeElement& a, const NilHeckeElement& b);

/// Divides every coefficient by u and sets u = 0, requiring divisibility.
NilHeckeElement divide_by_u_at_zero(const NilHeckeElement& x);

}  // namespace nilshift
