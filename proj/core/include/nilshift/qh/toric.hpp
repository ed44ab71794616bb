#pragma once

#include <string>
#include <vector>

#include "nilshift/weyl/weyl.hpp"

namespace nilshift {

/// Smooth complete fan of a compact toric manifold.
struct ToricData {
  std::string name;
  std::size_t rank = 0;
  std::vector<std::vector<int>> rays;
  /// Maximal cones as ray indices; one fixed point per cone.
  std::vector<std::vector<std::size_t>> cones;

  /// Throws MathError unless the fan is smooth, complete and monotone.
  void validate() const;
  bool is_smooth() const;
  bool is_complete() const;
  bool is_monotone() const;

  /// Same fan after the lattice change taking the first cone to the standard basis.
  ToricData normalized() const;

  std::size_t num_fixed_points() const { return cones.size(); }
  /// Integer matrix whose columns are the rays of cone p.
  IntMatrix cone_matrix(std::size_t p) const;
  /// Tangent weights at fixed point p as character vectors, in cone order.
  std::vector<std::vector<int>> tangent_weights(std::size_t p) const;
  /// Character of D_ρ restricted to fixed point p (zero if ρ is not a ray of p).
  std::vector<int> divisor_restriction(std::size_t rho, std::size_t p) const;

  /// Structured text: "name", "rank", "ray", "cone" lines, '#' comments.
  static ToricData parse(const std::string& text);
  static ToricData load(const std::string& path);
  std::string to_text() const;

  static ToricData catalog(const std::string& name);
  static std::vector<std::string> catalog_names();
};

}  // namespace nilshift
