#pragma once

#include <string_view>

#include "nilshift/symbolic/ratfunc.hpp"

namespace nilshift {

/// Parses +, -, *, /, ^ (integer exponent), parentheses, integers and ring variables.
RatFunc parse_ratfunc(std::string_view text, const RingPtr& ring);

/// As parse_ratfunc, but the result must be a (Laurent) polynomial.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace nilshift
