#pragma once

// Internal polynomial helpers over Q; coefficients lowest degree first,
// leading coefficient nonzero unless the polynomial is zero (empty vector).

#include <vector>

#include "flagstab/matrix.hpp"
#include "flagstab/rational.hpp"

namespace flagstab::detail {

using Poly = std::vector<Rational>;

Poly poly_normalize(Poly p);
Poly poly_derivative(const Poly& p);
Poly poly_monic(Poly p);

// Remainder of a by b (b nonzero).
Poly poly_mod(Poly a, const Poly& b);

// Monic gcd via Euclid.
Poly poly_gcd(Poly a, Poly b);

// Exact quotient; the division must leave no remainder.
Poly poly_divide_exact(const Poly& a, const Poly& b);

// p / gcd(p, p'): same irreducible factors, each once.
Poly poly_squarefree_part(const Poly& p);

// Horner evaluation with a square matrix argument.
Matrix poly_eval(const Poly& p, const Matrix& m);

// All rational roots, ascending. Throws computation_error when the
// coefficient bounds make divisor enumeration infeasible.
std::vector<Rational> rational_roots(const Poly& p);

}  // namespace flagstab::detail
