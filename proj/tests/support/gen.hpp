#pragma once

#include <cstdint>
#include <vector>

#include "nilshift/symbolic/ratfunc.hpp"

namespace nilshift::testing {

/// splitmix64; deterministic across platforms.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

  bool coin() { return (next() & 1) != 0; }

  Rational rational(int bound = 5) {
    int num = range(-bound, bound);
    int den = range(1, bound);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  /// Random polynomial in the listed variables with small degree.
  Polynomial poly(const RingPtr& ring, const std::vector<std::size_t>& vars, int terms = 3, int maxdeg = 2) {
    Polynomial p(ring);
    for (int t = 0; t < terms; ++t) {
      Exponent e(ring->size(), 0);
      for (auto v : vars) e[v] = ring->laurent(v) ? range(-1, maxdeg) : range(0, maxdeg);
      p.add_term(e, rational());
    }
    return p;
  }

  RatFunc ratfunc(const RingPtr& ring, const std::vector<std::size_t>& vars) {
    Polynomial n = poly(ring, vars);
    Polynomial d = poly(ring, vars, 2, 1);
    if (d.is_zero()) d = Polynomial(ring, Rational(1));
    return RatFunc(n, d);
  }

 private:
  std::uint64_t state_;
};

}  // namespace nilshift::testing
