#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flagstab/matrix.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab {

// Signed index convention: a dimension-2n space carries basis indices
// -n < ... < -1 < 1 < ... < n; odd orthogonal spaces insert index 0 in the
// middle. Coordinates are stored in that ascending index order, so
// position(i) below is the column of e_i.
bool dim_has_zero_index(std::size_t dim);
long signed_level(std::size_t dim);                       // n for dims 2n and 2n+1
std::size_t signed_position(long index, std::size_t dim);  // column of e_index
long signed_index_at(std::size_t position, std::size_t dim);
Vec signed_unit(long index, std::size_t dim);

enum class PairingKind { standard_dual, split_symmetric, split_symplectic, explicit_gram };

std::string pairing_kind_name(PairingKind kind);

// Bilinear pairing X x Y -> Q given by <x, y> = x^T G y. Named kinds fix
// the gram: standard_dual is the identity (X = V, Y = V_*); split_symmetric
// has <e_i, e_-i> = 1 (plus <e_0, e_0> = 1 when odd); split_symplectic has
// <e_i, e_-i> = 1 for i > 0 and -1 for i < 0. Explicit grams may be
// rectangular or degenerate; degeneracy is how truncated infinite pairings
// show up, so nothing here assumes full rank.
class Pairing {
public:
    static Pairing standard_dual(std::size_t dim);
    static Pairing split_symmetric(std::size_t dim);
    static Pairing split_symplectic(std::size_t dim);  // dim must be even
    static Pairing explicit_gram(Matrix gram);

    PairingKind kind() const { return kind_; }
    const Matrix& gram() const { return gram_; }
    std::size_t left_dim() const { return gram_.rows(); }
    std::size_t right_dim() const { return gram_.cols(); }

    bool is_form() const { return left_dim() == right_dim(); }
    bool is_symmetric() const;
    bool is_antisymmetric() const;

    Rational pair(const Vec& x, const Vec& y) const;

private:
    Pairing(PairingKind kind, Matrix gram) : kind_(kind), gram_(std::move(gram)) {}
    PairingKind kind_;
    Matrix gram_;
};

enum class Side { left, right };

Side opposite(Side side);

// Perpendicular of S on the opposite side of the pairing.
Subspace perp(const Subspace& s, const Pairing& p, Side side = Side::left);

// Double perpendicular; the smallest "closed" subspace containing S.
Subspace closure(const Subspace& s, const Pairing& p, Side side = Side::left);

bool is_closed(const Subspace& s, const Pairing& p, Side side = Side::left);

struct IsotropyReport {
    bool is_closed = false;
    bool is_isotropic = false;
    bool is_coisotropic = false;
    bool is_maximal_isotropic = false;
};

// Requires a form (square gram). Maximal isotropy follows the parity split:
// symmetric forms ask for a closed isotropic subspace with dim(perp/S) <= 1,
// antisymmetric ones for S = perp(S).
IsotropyReport classify(const Subspace& s, const Pairing& p);

// For a symmetric form and a closed isotropic L with dim(perp(L)/L) = 2,
// the two maximal isotropic subspaces containing L, in canonical order.
// Fails with computation_error when the induced plane has no rational
// isotropic lines (anisotropic over Q; cannot happen for split forms).
std::vector<Subspace> maximal_isotropic_extensions(const Subspace& l, const Pairing& p);

}  // namespace flagstab
