#include "flagstab/subspace.hpp"

#include <algorithm>

#include "flagstab/errors.hpp"

namespace flagstab {

Subspace Subspace::span(const std::vector<Vec>& generators, std::size_t ambient_dim) {
    for (const Vec& g : generators)
        if (g.size() != ambient_dim)
            throw input_error("generator length does not match ambient dimension");
    return span(Matrix::from_rows(generators), ambient_dim);
}

Subspace Subspace::span(Matrix generators, std::size_t ambient_dim) {
    if (generators.rows() != 0 && generators.cols() != ambient_dim)
        throw input_error("generator width does not match ambient dimension");
    generators.rref();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < generators.rows(); ++i) {
        Vec r = generators.row(i);
        bool zero = std::all_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) == 0; });
        if (!zero) rows.push_back(std::move(r));
    }
    Subspace s(ambient_dim);
    Matrix reduced = Matrix::from_rows(std::move(rows));
    if (reduced.rows() != 0) s.basis_ = std::move(reduced);
    return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = Matrix::identity(ambient_dim);
    return s;
}

Subspace Subspace::from_rref(Matrix basis, std::size_t ambient_dim) {
    Matrix check = basis;
    check.rref();
    if (check != basis)
        throw input_error("basis rows are not in reduced row echelon form");
    if (basis.rows() != 0 && basis.cols() != ambient_dim)
        throw input_error("basis width does not match ambient dimension");
    Subspace s(ambient_dim);
    if (basis.rows() != 0) s.basis_ = std::move(basis);
    return s;
}

Vec Subspace::reduce(Vec v) const {
    require_internal(v.size() == ambient_dim_, "reduce: vector/ambient mismatch");
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t pivot = 0;
        while (pivot < ambient_dim_ && sgn(basis_.at(r, pivot)) == 0) ++pivot;
        if (pivot == ambient_dim_ || sgn(v[pivot]) == 0) continue;
        Rational f = v[pivot];
        for (std::size_t j = pivot; j < ambient_dim_; ++j) v[j] -= f * basis_.at(r, j);
    }
    return v;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_dim_) throw input_error("vector/ambient dimension mismatch");
    Vec residue = reduce(v);
    return std::all_of(residue.begin(), residue.end(),
                       [](const Rational& x) { return sgn(x) == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_)
        throw input_error("subspace ambient dimensions differ");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_row(i))) return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    if (v.size() != ambient_dim_) throw input_error("vector/ambient dimension mismatch");
    Vec residue = v;
    Vec coords(dim());
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t pivot = 0;
        while (pivot < ambient_dim_ && sgn(basis_.at(r, pivot)) == 0) ++pivot;
        if (pivot == ambient_dim_) continue;
        coords[r] = residue[pivot];
        if (sgn(coords[r]) == 0) continue;
        for (std::size_t j = pivot; j < ambient_dim_; ++j)
            residue[j] -= coords[r] * basis_.at(r, j);
    }
    bool zero = std::all_of(residue.begin(), residue.end(),
                            [](const Rational& x) { return sgn(x) == 0; });
    if (!zero) return std::nullopt;
    return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_)
        throw input_error("subspace ambient dimensions differ");
    std::vector<Vec> rows;
    rows.reserve(dim() + other.dim());
    for (std::size_t i = 0; i < dim(); ++i) rows.push_back(basis_row(i));
    for (std::size_t i = 0; i < other.dim(); ++i) rows.push_back(other.basis_row(i));
    return span(rows, ambient_dim_);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_)
        throw input_error("subspace ambient dimensions differ");
    // A cap B = ann(ann(A) + ann(B)) under the standard dot pairing.
    Subspace joint = annihilator().sum(other.annihilator());
    return joint.annihilator();
}

Subspace Subspace::annihilator() const {
    if (dim() == 0) return full(ambient_dim_);
    Matrix m = basis_;
    Matrix k = m.kernel();
    Subspace s(ambient_dim_);
    s.basis_ = std::move(k);
    return s;
}

bool Subspace::operator==(const Subspace& other) const {
    return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
}

bool Subspace::operator<(const Subspace& other) const {
    if (ambient_dim_ != other.ambient_dim_) return ambient_dim_ < other.ambient_dim_;
    if (dim() != other.dim()) return dim() < other.dim();
    const auto& a = basis_.flat();
    const auto& b = other.basis_.flat();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

bool RrefAccumulator::insert(Vec v) {
    require_internal(v.size() == ambient_dim_, "accumulator row width mismatch");
    // Forward-reduce against existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (sgn(v[pivots_[r]]) == 0) continue;
        Rational f = v[pivots_[r]];
        const Vec& row = rows_[r];
        for (std::size_t j = pivots_[r]; j < ambient_dim_; ++j)
            if (sgn(row[j]) != 0) v[j] -= f * row[j];
    }
    std::size_t pivot = 0;
    while (pivot < ambient_dim_ && sgn(v[pivot]) == 0) ++pivot;
    if (pivot == ambient_dim_) return false;

    Rational inv = 1 / v[pivot];
    for (std::size_t j = pivot; j < ambient_dim_; ++j)
        if (sgn(v[j]) != 0) v[j] *= inv;

    // Back-eliminate the new pivot from existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (sgn(rows_[r][pivot]) == 0) continue;
        Rational f = rows_[r][pivot];
        for (std::size_t j = pivot; j < ambient_dim_; ++j)
            if (sgn(v[j]) != 0) rows_[r][j] -= f * v[j];
    }

    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

bool RrefAccumulator::contains(const Vec& v) const {
    require_internal(v.size() == ambient_dim_, "accumulator row width mismatch");
    Vec w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (sgn(w[pivots_[r]]) == 0) continue;
        Rational f = w[pivots_[r]];
        const Vec& row = rows_[r];
        for (std::size_t j = pivots_[r]; j < ambient_dim_; ++j)
            if (sgn(row[j]) != 0) w[j] -= f * row[j];
    }
    return std::all_of(w.begin(), w.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Subspace RrefAccumulator::to_subspace() const {
    return Subspace::span(rows_, ambient_dim_);
}

}  // namespace flagstab
