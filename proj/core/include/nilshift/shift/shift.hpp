#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilshift/nilhecke/nilhecke.hpp"
#include "nilshift/qh/qh.hpp"

namespace nilshift {

/// Sign κ in the quantum connection κ u q d/dq - c1 * used by the shift axioms.
constexpr int kConnectionSign = 1;
/// Equivariant parameters of the target pulled back to the group: h_k -> s * Σ_j ι_kj h_j.
constexpr int kParameterSign = -1;

/// How a compact group G acts on a toric target through its maximal torus.
struct GroupAction {
  DatumPtr group;
  /// Toric co-character of each basis co-character of G: iota[k][j] is coordinate k of ι(e_j).
  std::vector<std::vector<int>> iota;
  /// Per simple reflection: the lattice automorphism of the fan and the induced
  /// permutation of fixed points (p goes to perm[p]).
  std::vector<IntMatrix> weyl_lattice;
  std::vector<std::vector<std::size_t>> weyl_perm;

  std::vector<int> apply_iota(const std::vector<int>& sigma) const;
  /// "T" (the full torus of the target), "SU2" (CP1 only), or "Tr" acting trivially on a point.
  static GroupAction make(const QHModule& m, const std::string& group);
  std::string describe() const;
};

/// y -> matrix * twist(y), on class coordinates over F_R(q).
struct Operator {
  Matrix matrix;
  Twist twist;

  Vec apply(const Vec& y) const;
  Operator then(const Operator& inner) const;  // this ∘ inner
  bool operator==(const Operator& o) const { return matrix == o.matrix && twist == o.twist; }
};

struct ShiftGenerator {
  AffineWeylElement label;
  Matrix matrix;
  Twist twist;  // stored coefficient twist; must equal the twist of the label
  int valuation_bound = 0;
};

struct AxiomResult {
  std::string id;  // "i".."vii"
  std::string name;
  bool pass = true;
  std::string witness;  // first nonzero residual on failure
  std::size_t checks = 0;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;
  bool validated() const;
  const AxiomResult& at(const std::string& id) const;
  std::vector<std::string> failing() const;
};

struct SolveOptions {
  /// Added to the default q-valuation bound N.
  int widen = 0;
  long budget = 2000000;  // equation rows
};

/// Shift operators on a toric QH module: one stored operator per generator of W̃
/// (identity, ±basis co-characters, simple reflections).
class ShiftDatum {
 public:
  ShiftDatum() = default;
  ShiftDatum(std::shared_ptr<const QHModule> module, GroupAction action);

  const QHModule& module() const { return *module_; }
  const std::shared_ptr<const QHModule>& module_ptr() const { return module_; }
  const GroupAction& action() const { return action_; }
  const DatumPtr& group() const { return action_.group; }
  /// Q[u, h.., q^{±1}] of the group.
  const RingPtr& ring() const { return ring_; }
  std::size_t q_index() const { return q_index_; }
  const Matrix& c1_matrix() const { return c1_; }
  const Matrix& restriction() const { return restriction_; }
  /// Coordinates of a module class in the group's coefficients.
  Vec pull(const Vec& y) const;
  Vec unit() const;
  /// Quantum product in the group's coefficients.
  Vec mul(const Vec& a, const Vec& b) const;

  std::vector<ShiftGenerator>& generators() { return generators_; }
  const std::vector<ShiftGenerator>& generators() const { return generators_; }
  const ShiftGenerator* find(const AffineWeylElement& a) const;
  ShiftGenerator* find(const AffineWeylElement& a);

  /// Default q-valuation bound: max over fixed points of |<c1|_p, ισ>|.
  int default_bound(const std::vector<int>& sigma) const;

  /// The coefficient twist of a label, on ring().
  Twist label_twist(const AffineWeylElement& a) const;
  Operator identity_operator() const;
  /// Operator of a generator using its matrix and the twist of its label.
  Operator generator_operator(const ShiftGenerator& g) const;
  /// Operator for any σ[w]: translations ±e_i in coordinate order, then the reduced word of w.
  Operator compose(const AffineWeylElement& a) const;
  /// Σ f * compose(a)(y) over the terms of x.
  Vec nilhecke_act(const NilHeckeElement& x, const Vec& y) const;
  /// κ u q d/dq y - c1 * y.
  Vec connection(const Vec& y) const;
  /// Residual κ u q dM/dq - C M + M A(C) of an operator.
  Matrix connection_residual(const Operator& op) const;
  /// The geometric W-pushforward for simple reflection i.
  Matrix weyl_pushforward(std::size_t i) const;

  std::string serialize() const;
  static ShiftDatum deserialize(std::shared_ptr<const QHModule> module, GroupAction action, const std::string& text);

 private:
  std::shared_ptr<const QHModule> module_;
  GroupAction action_;
  RingPtr ring_;
  std::size_t q_index_ = 0;
  std::map<std::size_t, RatFunc> pull_map_;
  Matrix c1_;
  Matrix restriction_;
  std::vector<Matrix> mult_;
  std::vector<ShiftGenerator> generators_;
};

/// Solves the translation generators from the connection equation and the u=0
/// anchor S(1) = z^{ισ}; Weyl generators are the geometric pushforwards.
/// Throws MathError describing infeasibility or the degrees of freedom.
ShiftDatum solve(std::shared_ptr<const QHModule> module, const GroupAction& action, const SolveOptions& opts = {});

/// Matrix of a single translation generator (exposed for ansatz experiments).
Matrix solve_translation(const ShiftDatum& frame, const std::vector<int>& sigma, int bound, int connection_sign,
                         long budget);

/// The u=0 datum: translation generators act by quantum multiplication with the
/// Batyrev elements z^{ισ}; Weyl generators are pushforwards.
ShiftDatum u0_datum(std::shared_ptr<const QHModule> module, const GroupAction& action);

/// Checks axioms (i)-(vii); words of length <= max_word; random scalars from seed.
AxiomReport validate(const ShiftDatum& s, std::uint64_t seed = 1, int max_word = 3);

/// A deliberately broken datum and the single axiom it must fail.
struct ShiftFault {
  std::string name;
  std::string axiom;
  ShiftDatum datum;
};

/// Faults applicable to a validated datum: doubled identity (i), wrong stored
/// twist (ii), (1+u)S_{-σ} (iii), the gauge pair S_σ(1+uE01), (1-uE01)S_{-σ}
/// on rank-one groups (iv), negated Weyl generator (v), N=0 (vi), and
/// uS_σ, u^{-1}S_{-σ} on groups without Weyl generators (vii).
std::vector<ShiftFault> shift_faults(const ShiftDatum& base);

/// Minimal q-degree of a rational function (numerator valuation; denominators are q-free at q=0).
int q_valuation(const RatFunc& f, std::size_t q_index);

}  // namespace nilshift
