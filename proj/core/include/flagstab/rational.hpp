#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "flagstab/errors.hpp"

namespace flagstab {

// Exact arithmetic is GMP's canonical mpq: gcd(num, den) = 1, den > 0.
// All arithmetic on canonical values stays canonical; only raw construction
// from num/den pairs needs an explicit canonicalize, which make_rational and
// parse_rational take care of.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p" and "p/q" with optional sign, arbitrary precision.
Rational parse_rational(const std::string& text);

// Emits "p" when the denominator is 1, otherwise "p/q".
std::string rational_to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

// Exact square root in Q: p/q has one iff p and q are perfect squares
// (after canonicalization).
std::optional<Rational> rational_sqrt(const Rational& value);

using Vec = std::vector<Rational>;

}  // namespace flagstab
