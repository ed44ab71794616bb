#pragma once

#include "nilshift/nilhecke/nilhecke.hpp"
#include "support/gen.hpp"

namespace nilshift::testing {

inline std::vector<std::size_t> coeff_vars(const DatumPtr& d) {
  std::vector<std::size_t> v{d->u_index()};
  for (std::size_t k = 0; k < d->rank(); ++k) v.push_back(d->h_index(k));
  return v;
}

inline AffineWeylElement random_affine(const DatumPtr& d, Gen& g) {
  const auto& W = d->weyl_elements();
  std::vector<int> s(d->rank());
  for (auto& x : s) x = g.range(-1, 1);
  return AffineWeylElement(d, s, W[static_cast<std::size_t>(g.range(0, static_cast<int>(W.size()) - 1))]);
}

// One or two terms; coefficients are polynomials, occasionally with a linear denominator.
inline NilHeckeElement random_element(const DatumPtr& d, Gen& g, bool allow_den = true) {
  NilHeckeElement x(d);
  int n = g.range(1, 2);
  for (int t = 0; t < n; ++t) {
    Polynomial num = g.poly(d->ring(), coeff_vars(d), 2, 2);
    RatFunc c(num);
    if (allow_den && g.range(0, 3) == 0) {
      c = c / (RatFunc::variable(d->ring(), "u") + RatFunc::variable(d->ring(), d->h_name(0)));
    }
    x.add_term(random_affine(d, g), c);
  }
  return x;
}

}  // namespace nilshift::testing
