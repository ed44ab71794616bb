#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nilshift {

/// Arbitrary-precision rational number. Always kept in canonical form by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Integer power of a rational; negative exponents require r != 0.
Rational pow(const Rational& r, int e);

}  // namespace nilshift
