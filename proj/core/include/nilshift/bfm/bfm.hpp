#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilshift/nilhecke/nilhecke.hpp"
#include "nilshift/shift/shift.hpp"
#include "nilshift/symbolic/groebner.hpp"

namespace nilshift {

/// Coordinate ring of a BFM space with its Poisson bracket.
///
/// Torus of rank r: Q[h_1..h_r, z_1^{±1}..z_r^{±1}] with {z_i, h_j} = δ_ij z_i.
/// SU(2): the u=0 spherical subalgebra, generated by a = 𝐞h²𝐞, b = 𝐞(z+z⁻¹)𝐞,
/// c = 𝐞h(z−z⁻¹)𝐞, with relations and brackets computed from the nil-Hecke algebra.
class BFMSpace {
 public:
  static BFMSpace torus(const DatumPtr& t);
  static BFMSpace su2_spherical();

  const std::string& name() const { return name_; }
  const DatumPtr& group() const { return group_; }
  const RingPtr& ring() const { return ring_; }
  std::size_t dimension() const { return dimension_; }
  /// Relations among the generators (empty for tori).
  const std::vector<Polynomial>& relations() const { return relations_; }
  /// Variables acting as scalars (h_i, or a) and as operators (z_i, or b, c).
  const std::vector<std::size_t>& scalar_vars() const { return scalar_vars_; }
  const std::vector<std::size_t>& operator_vars() const { return operator_vars_; }
  /// {x_i, x_j} for ring variables.
  const Polynomial& bracket_of(std::size_t i, std::size_t j) const { return table_[i][j]; }
  /// Leibniz extension: Σ ∂f/∂x_i ∂g/∂x_j {x_i, x_j}.
  Polynomial bracket(const Polynomial& f, const Polynomial& g) const;
  /// Nil-Hecke element represented by each ring variable (u=0 representatives).
  const std::vector<NilHeckeElement>& nilhecke_generators() const { return nh_; }

 private:
  std::string name_;
  DatumPtr group_;
  RingPtr ring_;
  std::size_t dimension_ = 0;
  std::vector<Polynomial> relations_;
  std::vector<std::size_t> scalar_vars_, operator_vars_;
  std::vector<std::vector<Polynomial>> table_;
  std::vector<NilHeckeElement> nh_;
};

/// QH_G(M) at q=1, u=0 as a module over the BFM coordinate ring: one matrix per
/// ring variable (and inverses for Laurent variables), entries in the scalar variables.
struct PontryaginModule {
  BFMSpace space;
  std::size_t rank = 0;
  std::vector<Matrix> action;
  std::vector<Matrix> inverse_action;  // filled for Laurent variables
  /// Representation of a (Laurent) polynomial.
  Matrix represent(const Polynomial& f) const;
};

/// For a torus datum: h_i scalar, z_i = compose(e_i) at u=0, q=1. For SU(2):
/// the W-invariant submodule with the spherical generators acting via nilhecke_act.
PontryaginModule pontryagin_module(const ShiftDatum& s);

struct KernelWindow {
  int scalar_degree = 1;
  int first_operator_degree = 1;
  int max_operator_degree = 8;
};

struct AnnihilatorResult {
  IdealPresentation ideal;     // Groebner basis cached
  std::vector<Polynomial> generators;  // as emitted by the kernel method (plus relations)
  int operator_degree = 0;     // window at which the ideal stabilized
};

/// Kernel of the representation on monomials in the window, closed under the
/// Groebner basis; grows the operator degree until the ideal is zero-dimensional
/// after specializing the scalars and unchanged at the next degree.
/// Throws MathError if that does not happen within max_operator_degree.
AnnihilatorResult annihilator_ideal(const PontryaginModule& mod, const KernelWindow& window = {},
                                    long budget = kDefaultGroebnerBudget);

/// ⟨-z_i dW/dz_i - h_i⟩ at q=1 in the BFM ring of the torus datum.
IdealPresentation graph_ideal(const ShiftDatum& s, const BFMSpace& space);

struct BracketCheck {
  std::size_t a = 0, b = 0;
  std::string bracket;  // canonical text of {g_a, g_b}
  bool in_ideal = true;
};

struct LagrangianReport {
  std::string space;
  std::vector<std::string> generators;
  int krull_dimension = 0;
  int half_dimension = 0;
  std::vector<BracketCheck> brackets;
  bool coisotropic = true;
  bool dimension_ok = true;
  /// Set when compared with the expected graph ideal.
  std::optional<bool> graph_equal;
  bool certified() const { return coisotropic && dimension_ok; }
  /// Names of the failing checks among "coisotropic", "dimension", "graph".
  std::vector<std::string> failing() const;
};

LagrangianReport certify_lagrangian(const BFMSpace& space, const std::vector<Polynomial>& generators,
                                    const std::optional<IdealPresentation>& graph = std::nullopt,
                                    long budget = kDefaultGroebnerBudget);

}  // namespace nilshift
