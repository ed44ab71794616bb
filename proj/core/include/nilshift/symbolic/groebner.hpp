#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilshift/symbolic/polynomial.hpp"

namespace nilshift {

/// Block order: blocks are compared in sequence, graded reverse lexicographic
/// inside each block. A single block is grevlex; singleton blocks give lex.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::string name, std::vector<std::vector<std::size_t>> blocks);

  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);

  /// -1, 0, 1 as a <, =, > b.
  int compare(const Exponent& a, const Exponent& b) const;
  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

  const std::string& name() const { return name_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> blocks_;
};

constexpr long kDefaultGroebnerBudget = 200000;

/// Ideal in a (Laurent) polynomial ring. Laurent variables x are handled by
/// saturation: the working ring appends t_x with x*t_x - 1 adjoined.
class IdealPresentation {
 public:
  IdealPresentation() = default;
  IdealPresentation(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Polynomial ring with inverse variables appended (names "t_<x>").
  const RingPtr& work_ring() const { return work_ring_; }
  Polynomial to_work(const Polynomial& f) const;
  Polynomial from_work(const Polynomial& f) const;
  /// Generators in the working ring, including x*t_x - 1.
  std::vector<Polynomial> work_generators() const;

  bool has_basis() const { return basis_.has_value(); }
  /// Reduced Groebner basis in the working ring, sorted by leading monomial.
  const std::vector<Polynomial>& basis() const;
  const MonomialOrder& order() const;
  bool is_unit() const;

  /// Grevlex on the working ring.
  MonomialOrder default_order() const;

 private:
  RingPtr ring_;
  RingPtr work_ring_;
  std::vector<Polynomial> generators_;
  std::vector<std::size_t> laurent_vars_;
  std::optional<std::vector<Polynomial>> basis_;
  MonomialOrder order_;

  friend IdealPresentation groebner(const IdealPresentation&, const MonomialOrder&, long);
};

/// Buchberger's algorithm with product and chain criteria. Throws
/// BudgetExhausted after `budget` reduction steps.
IdealPresentation groebner(const IdealPresentation& ideal, const MonomialOrder& order,
                           long budget = kDefaultGroebnerBudget);
IdealPresentation groebner(const IdealPresentation& ideal, long budget = kDefaultGroebnerBudget);

/// Leading exponent of a working-ring polynomial under an order.
Exponent leading_exponent(const Polynomial& f, const MonomialOrder& order);

/// Full reduction of a working-ring polynomial by a list (no basis property needed).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& order,
                  long budget = kDefaultGroebnerBudget);

/// Remainder of f (original ring) modulo the cached basis, mapped back to the original ring.
Polynomial normal_form(const Polynomial& f, const IdealPresentation& ideal);

/// Computes the basis if needed.
bool ideal_membership(const Polynomial& f, const IdealPresentation& ideal, long budget = kDefaultGroebnerBudget);

/// Krull dimension of the quotient ring (unit ideal gives -1).
int krull_dimension(const IdealPresentation& ideal);

/// Equality of ideals in the same ring (both are saturated by their Laurent variables).
bool ideals_equal(const IdealPresentation& a, const IdealPresentation& b, long budget = kDefaultGroebnerBudget);

/// True iff every S-polynomial of the cached basis reduces to zero and every
/// generator reduces to zero.
bool verify_basis(const IdealPresentation& ideal);

}  // namespace nilshift
