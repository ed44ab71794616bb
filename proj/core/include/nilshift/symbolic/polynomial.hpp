#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilshift/symbolic/poly_ring.hpp"
#include "nilshift/symbolic/rational.hpp"

namespace nilshift {

using Exponent = std::vector<int>;

/// Print order: higher total degree first, then lexicographic in ring order.
bool print_order_less(const Exponent& a, const Exponent& b);

/// Term-map order (graded lexicographic); the last entry is the leading term.
struct GradedLess {
  bool operator()(const Exponent& a, const Exponent& b) const { return print_order_less(a, b); }
};

/// Sparse multivariate (Laurent) polynomial over Q.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLess>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, const Rational& c);
  Polynomial(RingPtr ring, long c) : Polynomial(std::move(ring), Rational(c)) {}

  static Polynomial variable(RingPtr ring, std::string_view name, int power = 1);
  static Polynomial variable(RingPtr ring, std::size_t index, int power = 1);
  static Polynomial monomial(RingPtr ring, Exponent e, const Rational& c = 1);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t nterms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;
  Rational coefficient_of(const Exponent& e) const;

  /// Adds c·x^e in place.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  /// Deterministic total order (ring first, then terms).
  bool operator<(const Polynomial& o) const;

  /// Non-negative powers always; negative powers only for Laurent monomials.
  Polynomial pow(int e) const;

  int degree(std::size_t var) const;
  int min_degree(std::size_t var) const;
  int total_degree() const;
  /// True if var occurs with nonzero exponent in some term.
  bool involves(std::size_t var) const;

  Polynomial derivative(std::size_t var) const;
  /// Coefficient of var^power, as a polynomial with var eliminated.
  Polynomial coefficient(std::size_t var, int power) const;
  /// Replaces var by a constant.
  Polynomial evaluate(std::size_t var, const Rational& value) const;

  /// Substitutes variables by polynomials of a common target ring. Unmapped
  /// variables are kept (they must exist in the target ring by name).
  /// Negative powers require a monomial image.
  Polynomial substitute(const std::map<std::size_t, Polynomial>& images, const RingPtr& target) const;
  Polynomial substitute(const std::map<std::size_t, Polynomial>& images) const {
    return substitute(images, ring_);
  }

  /// Same polynomial viewed in another ring (matching variables by name).
  Polynomial embed(const RingPtr& target) const;

  /// Leading term under the graded lexicographic print order.
  std::pair<Exponent, Rational> leading_term() const;

  /// Splits off the largest Laurent monomial factor: *this = out.first * x^{out.second}
  /// with out.first having no negative exponents and no pure-monomial factor.
  std::pair<Polynomial, Exponent> split_monomial() const;

  /// Rational content (positive) so that *this / content has coprime integer coefficients.
  Rational content() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  TermMap terms_;

  void adopt(const Polynomial& o);
};

std::string to_string(const Polynomial& p);

/// Exact quotient a/b if b divides a, else nullopt. Works on Laurent input.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor with positive integer leading coefficient, unique up
/// to Laurent units; gcd(0,0)=0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace nilshift
