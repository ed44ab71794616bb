#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nilshift/symbolic/ratfunc.hpp"

namespace nilshift {

/// Square integer matrix acting on column vectors.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  std::vector<int> operator*(const std::vector<int>& v) const;
  IntMatrix transpose() const;
  /// Exact inverse; throws unless unimodular.
  IntMatrix inverse() const;
  bool is_identity() const;

  bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  bool operator<(const IntMatrix& o) const { return a_ < o.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> a_;
};

/// Product of torus factors and SU(n) factors. Co-characters are written in the
/// coroot/standard basis, characters in the dual (fundamental weight) basis, so
/// the pairing matrix is the identity.
class RootDatum {
 public:
  struct Factor {
    enum class Kind { Torus, SU } kind;
    int n;  // torus rank, or n for SU(n)
  };

  explicit RootDatum(std::vector<Factor> factors);
  /// "S1", "T2", "SU2", "SU3", products joined by 'x' (e.g. "T1xSU2").
  static std::shared_ptr<const RootDatum> parse(const std::string& descriptor);

  const std::string& name() const { return name_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t rank() const { return rank_; }
  std::size_t num_simple() const { return simple_cochar_.size(); }

  /// Coefficient ring Q[u, h_1..h_r] (a single "h" in rank 1).
  const RingPtr& ring() const { return ring_; }
  const std::string& h_name(std::size_t k) const { return ring_->name(k + 1); }
  std::size_t u_index() const { return 0; }
  std::size_t h_index(std::size_t k) const { return k + 1; }

  /// Pairing <character, co-character> on basis vectors.
  int pairing(const std::vector<int>& character, const std::vector<int>& cocharacter) const;
  const IntMatrix& pairing_matrix() const { return pairing_; }

  /// Simple reflection acting on co-characters.
  const IntMatrix& simple_reflection(std::size_t i) const { return simple_cochar_[i]; }
  /// Simple root as a character vector.
  const std::vector<int>& simple_root(std::size_t i) const { return simple_roots_[i]; }
  /// Simple coroot as a co-character vector.
  const std::vector<int>& simple_coroot(std::size_t i) const { return simple_coroots_[i]; }
  /// The character h_alpha for a character vector alpha.
  RatFunc character_poly(const std::vector<int>& character) const;

  /// All finite Weyl elements as co-character matrices, identity first (BFS order).
  const std::vector<IntMatrix>& weyl_elements() const { return weyl_; }
  /// Shortest word (in simple reflection indices) of a Weyl element.
  const std::vector<std::size_t>& word(const IntMatrix& w) const;
  std::size_t weyl_index(const IntMatrix& w) const;
  /// Action on characters: (w^{-1})^T.
  IntMatrix character_action(const IntMatrix& w) const;

  bool operator==(const RootDatum& o) const { return name_ == o.name_; }

 private:
  std::vector<Factor> factors_;
  std::string name_;
  std::size_t rank_ = 0;
  RingPtr ring_;
  IntMatrix pairing_;
  std::vector<IntMatrix> simple_cochar_;
  std::vector<std::vector<int>> simple_roots_;
  std::vector<std::vector<int>> simple_coroots_;
  std::vector<IntMatrix> weyl_;
  std::vector<std::vector<std::size_t>> words_;
  std::map<IntMatrix, std::size_t> weyl_lookup_;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

/// Ring automorphism A of F_R given by images of u and the h variables.
class Twist {
 public:
  Twist() = default;
  Twist(RingPtr ring, std::map<std::size_t, RatFunc> images) : ring_(std::move(ring)), images_(std::move(images)) {}
  static Twist identity(RingPtr ring) { return Twist(std::move(ring), {}); }

  RatFunc operator()(const RatFunc& f) const;
  const std::map<std::size_t, RatFunc>& images() const { return images_; }
  const RingPtr& ring() const { return ring_; }

  /// The same substitution acting on a larger ring that contains the variables by name.
  Twist extend_to(const RingPtr& target) const;
  /// The same substitution after renaming variables through a linear dictionary
  /// (source variable name -> polynomial in the target ring).
  Twist compose(const Twist& inner) const;  // (*this) ∘ inner

  bool operator==(const Twist& o) const;

 private:
  RingPtr ring_;
  std::map<std::size_t, RatFunc> images_;
};

/// σ[w]: translation σ (co-character) followed by finite Weyl element w.
class AffineWeylElement {
 public:
  AffineWeylElement() = default;
  AffineWeylElement(DatumPtr datum, std::vector<int> sigma, IntMatrix w);

  static AffineWeylElement identity(DatumPtr datum);
  static AffineWeylElement translation(DatumPtr datum, std::vector<int> sigma);
  static AffineWeylElement weyl(DatumPtr datum, IntMatrix w);
  static AffineWeylElement simple_reflection(DatumPtr datum, std::size_t i);

  const DatumPtr& datum() const { return datum_; }
  const std::vector<int>& sigma() const { return sigma_; }
  const IntMatrix& w() const { return w_; }

  AffineWeylElement operator*(const AffineWeylElement& o) const;
  AffineWeylElement inverse() const;
  bool is_identity() const;
  bool is_translation() const { return w_.is_identity(); }

  bool operator==(const AffineWeylElement& o) const { return sigma_ == o.sigma_ && w_ == o.w_; }
  bool operator!=(const AffineWeylElement& o) const { return !(*this == o); }
  /// Canonical order: Weyl index, then σ.
  bool operator<(const AffineWeylElement& o) const;

  /// "(σ1,...,σr);word" with word "id" or e.g. "s1s2".
  std::string to_string() const;
  static AffineWeylElement parse(DatumPtr datum, const std::string& text);

 private:
  DatumPtr datum_;
  std::vector<int> sigma_;
  IntMatrix w_;
};

/// Global orientation sign in A_{σ[w]}(h_λ) = h_{wλ} + ε <wλ, σ> u.
constexpr int kTwistSign = +1;

/// A_{σ[w]} on the datum's coefficient ring.
Twist twist_automorphism(const AffineWeylElement& a);

/// Parses a co-character "(1,-2)" or "1,-2".
std::vector<int> parse_cocharacter(const std::string& text);
std::string cocharacter_string(const std::vector<int>& sigma);

}  // namespace nilshift
