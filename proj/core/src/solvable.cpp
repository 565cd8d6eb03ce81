#include <optional>
#include <utility>

#include "flagstab/errors.hpp"
#include "flagstab/liealg.hpp"
#include "liealg_detail.hpp"
#include "poly_detail.hpp"

namespace flagstab {

namespace {

Subspace bracket_span(const std::vector<Matrix>& basis, std::size_t n) {
    RrefAccumulator acc(n * n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            acc.insert(flatten(bracket(basis[i], basis[j])));
    return acc.to_subspace();
}

// Bracket saturation of the pool; nullopt once the span passes the bound.
std::optional<Subspace> saturate_bounded(std::vector<Matrix> pool, std::size_t n,
                                         std::size_t bound) {
    RrefAccumulator acc(n * n);
    std::vector<Matrix> kept;
    for (Matrix& m : pool) {
        if (acc.insert(flatten(m))) kept.push_back(std::move(m));
        if (acc.dim() > bound) return std::nullopt;
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Matrix br = bracket(kept[i], kept[j]);
            if (acc.insert(flatten(br))) {
                if (acc.dim() > bound) return std::nullopt;
                kept.push_back(std::move(br));
            }
        }
    }
    return acc.to_subspace();
}

}  // namespace

std::vector<LieSubalgebra> derived_series(const LieSubalgebra& g) {
    std::vector<LieSubalgebra> series{g};
    while (series.back().dim() > 0) {
        const LieSubalgebra& cur = series.back();
        Subspace next = bracket_span(cur.basis_matrices(), cur.ambient().n());
        if (next == cur.space()) break;
        series.push_back(LieSubalgebra::trusted(cur.ambient(), std::move(next)));
    }
    return series;
}

bool is_solvable(const LieSubalgebra& g) { return derived_series(g).back().dim() == 0; }

LieSubalgebra generated_subalgebra(const std::vector<Matrix>& generators, const Ambient& a) {
    const std::size_t n = a.n();
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].rows() != n || generators[i].cols() != n)
            throw input_error("generator " + std::to_string(i) + " has wrong shape");
        if (!a.space().contains(flatten(generators[i])))
            throw input_error("generator " + std::to_string(i) + " lies outside the ambient");
    }
    auto space = saturate_bounded(generators, n, a.space().dim());
    require_internal(space.has_value(), "saturation escaped the ambient");
    return LieSubalgebra::trusted(a, std::move(*space));
}

bool is_maximal_solvable(const LieSubalgebra& b) {
    if (!is_solvable(b))
        throw precondition_error("is_maximal_solvable needs a solvable input");
    const Ambient& a = b.ambient();
    const std::size_t n = a.n();
    std::size_t bound = a.solvable_dim_bound();
    if (bound == 0) bound = a.space().dim();

    std::vector<Matrix> base = b.basis_matrices();
    RrefAccumulator span_b(n * n);
    for (const Matrix& m : base) span_b.insert(flatten(m));

    for (std::size_t j = 0; j < a.space().dim(); ++j) {
        Vec x = a.space().basis_row(j);
        if (span_b.contains(x)) continue;
        std::vector<Matrix> pool = base;
        pool.push_back(unflatten(x, n));
        auto extended = saturate_bounded(std::move(pool), n, bound);
        if (!extended) continue;  // past every solvable dimension, cannot be solvable
        if (is_solvable(LieSubalgebra::trusted(a, std::move(*extended)))) return false;
    }
    return true;
}

LieSubalgebra normalizer(const LieSubalgebra& b, const Ambient& a) {
    const std::size_t n = a.n();
    if (b.ambient().n() != n || !a.space().contains(b.space()))
        throw input_error("normalizer needs b inside the ambient");
    const std::size_t d = a.space().dim();
    std::vector<Matrix> ambient_basis;
    ambient_basis.reserve(d);
    for (std::size_t j = 0; j < d; ++j) ambient_basis.push_back(unflatten(a.space().basis_row(j), n));
    std::vector<Matrix> b_basis = b.basis_matrices();
    Subspace ann = b.space().is_zero() ? Subspace::full(n * n) : b.space().annihilator();

    RrefAccumulator constraints(d);
    for (const Matrix& m : b_basis) {
        std::vector<Vec> images;
        images.reserve(d);
        for (std::size_t j = 0; j < d; ++j) images.push_back(flatten(bracket(ambient_basis[j], m)));
        for (std::size_t r = 0; r < ann.dim(); ++r) {
            Vec y = ann.basis_row(r);
            Vec crow(d);
            for (std::size_t j = 0; j < d; ++j) {
                Rational acc;
                for (std::size_t t = 0; t < n * n; ++t)
                    if (sgn(y[t]) != 0 && sgn(images[j][t]) != 0) acc += y[t] * images[j][t];
                crow[j] = acc;
            }
            constraints.insert(std::move(crow));
        }
    }
    Subspace solutions =
        constraints.dim() == 0
            ? Subspace::full(d)
            : Subspace::span(Matrix::from_rows(constraints.rows()).kernel(), d);
    return LieSubalgebra::trusted(a, detail::lift_coordinates(solutions, a.space()));
}

namespace {

Vec unit_vec(std::size_t dim, std::size_t pos) {
    Vec v(dim);
    v[pos] = 1;
    return v;
}

void normalize_leading(Vec& v) {
    for (const Rational& x : v) {
        if (sgn(x) != 0) {
            Rational lead = x;
            for (Rational& y : v) y /= lead;
            return;
        }
    }
}

// Common eigenvector of a solvable set of q x q matrices, by the standard
// induction: split off a codimension-1 ideal h above the derived algebra,
// recurse, intersect the weight space of h, then take the eigenvector of
// the leftover element for its smallest rational eigenvalue. Canonical at
// every step (first basis row of each eigenspace, smallest root).
Vec common_eigenvector(const std::vector<Matrix>& mats, std::size_t q) {
    RrefAccumulator flat_m(q * q);
    std::vector<Matrix> mbasis;
    for (const Matrix& m : mats)
        if (flat_m.insert(flatten(m))) mbasis.push_back(m);
    if (mbasis.empty()) return unit_vec(q, 0);

    RrefAccumulator h_acc(q * q);
    std::vector<Matrix> h_mats;
    for (std::size_t i = 0; i < mbasis.size(); ++i)
        for (std::size_t j = i + 1; j < mbasis.size(); ++j) {
            Matrix br = bracket(mbasis[i], mbasis[j]);
            if (h_acc.insert(flatten(br))) h_mats.push_back(std::move(br));
        }
    require_internal(h_acc.dim() < flat_m.dim(), "acting algebra is not solvable");
    for (const Matrix& m : mbasis) {
        if (h_acc.dim() + 1 == flat_m.dim()) break;
        if (h_acc.insert(flatten(m))) h_mats.push_back(m);
    }
    Matrix z;
    for (const Matrix& m : mbasis)
        if (!h_acc.contains(flatten(m))) {
            z = m;
            break;
        }
    require_internal(z.rows() == q, "no complement element above the ideal");

    Vec v0 = common_eigenvector(h_mats, q);

    // Weight space of h through v0.
    std::vector<Vec> weight_rows;
    for (const Matrix& h : h_mats) {
        Vec image = h.apply(v0);
        Rational lambda;
        for (std::size_t i = 0; i < q; ++i)
            if (sgn(v0[i]) != 0) {
                lambda = image[i] / v0[i];
                break;
            }
        for (std::size_t i = 0; i < q; ++i)
            require_internal(image[i] == lambda * v0[i], "ideal does not act by a scalar");
        Matrix shifted = h - Matrix::identity(q).scaled(lambda);
        for (std::size_t r = 0; r < q; ++r) weight_rows.push_back(shifted.row(r));
    }
    Subspace w = weight_rows.empty()
                     ? Subspace::full(q)
                     : Subspace::span(Matrix::from_rows(weight_rows).kernel(), q);
    require_internal(w.dim() > 0, "weight space vanished");

    // The common weight space of a solvable ideal is invariant under the
    // whole algebra, so z restricts; take the canonical rational eigenvector.
    Matrix zw(w.dim(), w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) {
        auto coords = w.coordinates(z.apply(w.basis_row(j)));
        require_internal(coords.has_value(), "weight space is not invariant");
        for (std::size_t i = 0; i < w.dim(); ++i) zw.at(i, j) = (*coords)[i];
    }
    detail::Poly cp = zw.char_poly();
    std::vector<Rational> roots = detail::rational_roots(cp);
    if (roots.empty())
        throw computation_error("stable chain step: the acting element has no rational eigenvalue");
    Matrix shifted = zw - Matrix::identity(w.dim()).scaled(roots.front());
    Subspace eig = Subspace::span(shifted.kernel(), w.dim());
    require_internal(eig.dim() > 0, "eigenvalue without eigenvector");

    Vec coords = eig.basis_row(0);
    Vec lifted(q);
    for (std::size_t i = 0; i < w.dim(); ++i) {
        if (sgn(coords[i]) == 0) continue;
        Vec wb = w.basis_row(i);
        for (std::size_t t = 0; t < q; ++t)
            if (sgn(wb[t]) != 0) lifted[t] += coords[i] * wb[t];
    }
    normalize_leading(lifted);
    return lifted;
}

bool stable_under(const LieSubalgebra& b, const Subspace& s) {
    for (std::size_t i = 0; i < b.dim(); ++i) {
        Matrix m = b.basis_matrix(i);
        for (std::size_t r = 0; r < s.dim(); ++r)
            if (!s.contains(m.apply(s.basis_row(r)))) return false;
    }
    return true;
}

}  // namespace

Chain stable_maximal_chain(const LieSubalgebra& b, const Subspace& lo, const Subspace& hi) {
    const std::size_t n = b.ambient().n();
    if (lo.ambient_dim() != n || hi.ambient_dim() != n)
        throw input_error("chain bounds must live in the ambient's representation space");
    if (!hi.contains(lo)) throw precondition_error("chain bounds must be nested: lo inside hi");
    if (!is_solvable(b))
        throw precondition_error("stable_maximal_chain needs a solvable algebra");
    if (!stable_under(b, lo) || !stable_under(b, hi))
        throw precondition_error("chain bounds must both be stable under the algebra");

    std::vector<Matrix> b_basis = b.basis_matrices();
    std::vector<Subspace> members{lo};
    Subspace current = lo;
    while (current != hi) {
        // Quotient hi/current through the canonical section (residues of
        // hi's basis mod current).
        std::vector<Vec> reduced;
        for (std::size_t r = 0; r < hi.dim(); ++r) reduced.push_back(current.reduce(hi.basis_row(r)));
        Subspace section = Subspace::span(reduced, n);
        const std::size_t q = section.dim();
        require_internal(q == hi.dim() - current.dim(), "quotient section has wrong dimension");

        std::vector<Matrix> action;
        action.reserve(b_basis.size());
        for (const Matrix& m : b_basis) {
            Matrix am(q, q);
            for (std::size_t j = 0; j < q; ++j) {
                Vec residue = current.reduce(m.apply(section.basis_row(j)));
                auto coords = section.coordinates(residue);
                require_internal(coords.has_value(), "action does not descend to the quotient");
                for (std::size_t i = 0; i < q; ++i) am.at(i, j) = (*coords)[i];
            }
            action.push_back(std::move(am));
        }

        Vec v_coords = common_eigenvector(action, q);
        Vec v(n);
        for (std::size_t i = 0; i < q; ++i) {
            if (sgn(v_coords[i]) == 0) continue;
            Vec sb = section.basis_row(i);
            for (std::size_t t = 0; t < n; ++t)
                if (sgn(sb[t]) != 0) v[t] += v_coords[i] * sb[t];
        }
        current = current.sum(Subspace::span({v}, n));
        members.push_back(current);
    }
    return Chain(std::move(members), n);
}

}  // namespace flagstab
