#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilshift/qh/toric.hpp"
#include "nilshift/symbolic/groebner.hpp"
#include "nilshift/symbolic/linalg.hpp"

namespace nilshift {

using Vec = std::vector<RatFunc>;

/// Laurent polynomial in the toric coordinates z with coefficients in F_R(q).
using ZPoly = std::map<std::vector<int>, RatFunc>;

/// Equivariant quantum cohomology of a monotone toric manifold, presented as the
/// relative Jacobian ring of W_HV = q * sum_ρ z^{v_ρ}.
///
/// Module basis: products D^β of the divisor classes D_ρ = q z^{v_ρ}, namely
/// the standard monomials of the divisor presentation over F_R(q), where
/// R = Q[u, h_1..h_r]. Coordinates live in F_R(q).
class QHModule {
 public:
  QHModule() = default;
  /// Validates the fan, normalizes the first cone, and builds the presentation.
  static QHModule build(const ToricData& fan, long budget = kDefaultGroebnerBudget);

  const ToricData& toric() const { return fan_; }
  const std::string& name() const { return fan_.name; }
  std::size_t lattice_rank() const { return fan_.rank; }
  /// The torus T acting on M; its ring is Q[u, h..].
  const DatumPtr& datum() const { return datum_; }
  /// Q[u, h.., q^{±1}].
  const RingPtr& coeff_ring() const { return coeff_; }
  std::size_t q_index() const { return q_index_; }
  std::size_t u_index() const { return 0; }
  std::size_t h_index(std::size_t k) const { return k + 1; }
  /// Q[z^{±1}.., q, u, h..] with the Jacobian relations (grevlex basis cached).
  const IdealPresentation& presentation() const { return pres_; }
  /// The relations -z_i dW/dz_i - h_i, cleared of denominators.
  const std::vector<Polynomial>& relations() const { return pres_.generators(); }
  /// The superpotential W_HV in the presentation ring.
  const Polynomial& superpotential() const { return potential_; }
  /// Q[D_0.., q, h..] with the linear and quantum Stanley-Reisner relations.
  const IdealPresentation& divisor_presentation() const { return dpres_; }

  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::vector<int>>& basis_exponents() const { return basis_; }
  /// Half-degree |β| of basis element i (deg q = deg h = deg u = 1 in these units).
  int degree(std::size_t i) const;
  std::string basis_name(std::size_t i) const;

  Vec zero() const;
  Vec unit() const;
  Vec basis_vector(std::size_t i) const;
  /// Coordinates of a Laurent polynomial in z.
  Vec coords(const ZPoly& f) const;
  /// Coordinates of a presentation-ring polynomial.
  Vec coords(const Polynomial& f) const;
  /// The Batyrev element z^σ.
  Vec z_class(const std::vector<int>& sigma) const;
  /// D_ρ = q z^{v_ρ}.
  Vec divisor(std::size_t rho) const;
  const Vec& c1() const { return c1_; }

  /// Matrix of quantum multiplication by basis element k.
  const Matrix& structure_matrix(std::size_t k) const { return mult_.at(k); }
  /// Matrix of quantum multiplication by a.
  Matrix mul_matrix(const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  /// Matrix of c1 *.
  const Matrix& c1_matrix() const { return c1_matrix_; }

  /// u q d/dq (coordinates) - c1 * y.
  Vec connection_apply(const Vec& y) const;

  /// Restriction of D_ρ to fixed point p, in R.
  RatFunc divisor_restriction(std::size_t rho, std::size_t p) const;
  /// R_{p,i}: restriction of basis element i to fixed point p.
  const Matrix& restriction_matrix() const { return restriction_; }
  /// Values at the fixed points; throws MathError if the restriction is singular.
  Vec fixed_point_decompose(const Vec& y) const;
  Vec fixed_point_recompose(const Vec& values) const;

  /// Canonical text of a class: "(c)*D0*D1 + ...".
  std::string to_string(const Vec& y) const;

 private:
  ToricData fan_;
  DatumPtr datum_;
  RingPtr coeff_;
  std::size_t q_index_ = 0;
  RingPtr pres_ring_;
  IdealPresentation pres_;
  Polynomial potential_;

  // Divisor presentation Q[D, q, h]/(linear + quantum Stanley-Reisner), with its
  // Groebner basis read over F_R(q) (monic in the D variables).
  RingPtr dring_;
  IdealPresentation dpres_;
  struct KPoly {
    std::vector<int> lead;
    std::map<std::vector<int>, RatFunc> terms;  // tail, divided by the leading coefficient
  };
  std::vector<KPoly> kbasis_;
  MonomialOrder dorder_;
  std::map<std::vector<int>, std::size_t> basis_index_;

  std::vector<std::vector<int>> basis_;  // D exponents of the basis monomials
  std::vector<Matrix> divisor_mult_;     // D_ρ *
  std::vector<Matrix> z_mult_, z_inv_mult_;
  std::vector<Matrix> mult_;
  Vec c1_;
  Matrix c1_matrix_;
  Matrix restriction_;
  Matrix restriction_inverse_;
  std::string restriction_det_;

  /// Coordinates of a polynomial in the D variables.
  Vec nf_coords(const std::map<std::vector<int>, RatFunc>& f) const;
  Vec monomial_coords(const std::vector<int>& a) const;
};

}  // namespace nilshift
