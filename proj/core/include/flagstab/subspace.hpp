#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flagstab/matrix.hpp"
#include "flagstab/rational.hpp"

namespace flagstab {

// Subspace of Q^n held by its unique RREF basis: rows sorted by pivot
// column, pivots = 1, pivot columns cleared elsewhere. Equality of
// subspaces is therefore plain equality of bases. The zero subspace is an
// empty basis plus the ambient dimension.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim)
        : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

    static Subspace span(const std::vector<Vec>& generators, std::size_t ambient_dim);
    static Subspace span(Matrix generators, std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    // Wraps rows that must already be in RREF; rejects anything else.
    static Subspace from_rref(Matrix basis, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim_; }

    const Matrix& basis() const { return basis_; }
    Vec basis_row(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    // Residue of v after eliminating all basis components; zero iff member.
    Vec reduce(Vec v) const;

    // Coordinates of v in the basis rows, if v is a member.
    std::optional<Vec> coordinates(const Vec& v) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    // { y : <b, y> = 0 for all basis rows b } under the standard dot product.
    Subspace annihilator() const;

    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }
    // Arbitrary-but-stable total order so subspaces can key maps/sets.
    bool operator<(const Subspace& other) const;

private:
    std::size_t ambient_dim_ = 0;
    Matrix basis_;  // 0 x ambient_dim when zero
};

// Incremental RREF row set for saturation loops (bracket closures, spans
// accumulated row by row). Rows are kept fully reduced at all times.
class RrefAccumulator {
public:
    explicit RrefAccumulator(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    // True when the row enlarged the span.
    bool insert(Vec v);
    bool contains(const Vec& v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Vec>& rows() const { return rows_; }

    Subspace to_subspace() const;

private:
    std::size_t ambient_dim_;
    std::vector<Vec> rows_;             // sorted by pivot column
    std::vector<std::size_t> pivots_;   // pivot column per row
};

}  // namespace flagstab
