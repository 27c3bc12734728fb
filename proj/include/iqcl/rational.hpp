#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace iqcl {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `a/b`, an integer, or a plain decimal such as `0.125` into an
/// exact rational. Decimals are read exactly (`0.1` is 1/10).
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Canonical `a/b` rendering (`a` when the denominator is 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace iqcl
