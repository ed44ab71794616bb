#pragma once

#include <map>
#include <string>

#include "nilshift/symbolic/polynomial.hpp"

namespace nilshift {

/// Exact rational function num/den over Q.
///
/// Canonical form: gcd(num, den) = 1, den has coprime integer coefficients with
/// positive leading coefficient and no Laurent-monomial factor. Equal values
/// therefore have identical representations.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(RingPtr ring);
  RatFunc(RingPtr ring, const Rational& c);
  RatFunc(RingPtr ring, long c) : RatFunc(std::move(ring), Rational(c)) {}
  RatFunc(const Polynomial& p);  // NOLINT(google-explicit-constructor)
  RatFunc(const Polynomial& num, const Polynomial& den);

  static RatFunc variable(RingPtr ring, std::string_view name, int power = 1);

  const RingPtr& ring() const { return num_.ring(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  /// Numerator as a polynomial; throws if the denominator is not 1.
  const Polynomial& as_polynomial() const;

  bool den_involves(std::size_t var) const { return den_.involves(var); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc& operator*=(const Rational& c);
  friend RatFunc operator*(RatFunc a, const Rational& c) { return a *= c; }
  friend RatFunc operator*(const Rational& c, RatFunc a) { return a *= c; }

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const;

  /// Replaces variables by rational functions in the target ring.
  RatFunc substitute(const std::map<std::size_t, RatFunc>& images, const RingPtr& target) const;
  RatFunc substitute(const std::map<std::size_t, RatFunc>& images) const {
    return substitute(images, ring());
  }
  /// Sets var = value; throws MathError naming the pole if the denominator vanishes.
  RatFunc evaluate(std::size_t var, const Rational& value) const;
  RatFunc derivative(std::size_t var) const;
  RatFunc embed(const RingPtr& target) const;

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;

  void normalize(bool reduce);
};

std::string to_string(const RatFunc& f);

/// Evaluates a polynomial at rational-function images (one normalization at the end).
RatFunc substitute_into(const Polynomial& p, const std::map<std::size_t, RatFunc>& images,
                        const RingPtr& target);

}  // namespace nilshift
