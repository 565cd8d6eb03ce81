#include "flagstab/liealg.hpp"

#include <algorithm>

#include "flagstab/errors.hpp"
#include "liealg_detail.hpp"
#include "poly_detail.hpp"

namespace flagstab {

namespace detail {

Subspace lift_coordinates(const Subspace& coords, const Subspace& space) {
    require_internal(coords.ambient_dim() == space.dim(),
                     "coordinate rows do not match the basis size");
    std::vector<Vec> rows;
    rows.reserve(coords.dim());
    for (std::size_t s = 0; s < coords.dim(); ++s) {
        Vec z = coords.basis_row(s);
        Vec lifted(space.ambient_dim());
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (sgn(z[j]) == 0) continue;
            Vec b = space.basis_row(j);
            for (std::size_t t = 0; t < lifted.size(); ++t)
                if (sgn(b[t]) != 0) lifted[t] += z[j] * b[t];
        }
        rows.push_back(std::move(lifted));
    }
    return Subspace::span(rows, space.ambient_dim());
}

}  // namespace detail

struct Ambient::Impl {
    AmbientKind kind;
    std::size_t n = 0;
    Pairing form = Pairing::standard_dual(1);
    Subspace space;
    std::shared_ptr<const Ambient> base;  // extension only
    std::vector<Matrix> extra;
    std::size_t solvable_bound = 0;
};

AmbientKind Ambient::kind() const { return impl_->kind; }
std::size_t Ambient::n() const { return impl_->n; }
const Pairing& Ambient::form() const { return impl_->form; }
const Subspace& Ambient::space() const { return impl_->space; }
const Ambient* Ambient::base() const { return impl_->base ? impl_->base.get() : nullptr; }
const std::vector<Matrix>& Ambient::extra() const { return impl_->extra; }
std::size_t Ambient::solvable_dim_bound() const { return impl_->solvable_bound; }

bool Ambient::operator==(const Ambient& other) const {
    return impl_->kind == other.impl_->kind && impl_->n == other.impl_->n &&
           impl_->space == other.impl_->space;
}

std::string ambient_kind_name(AmbientKind kind) {
    switch (kind) {
        case AmbientKind::gl: return "gl";
        case AmbientKind::sl: return "sl";
        case AmbientKind::so: return "so";
        case AmbientKind::sp: return "sp";
        case AmbientKind::extension: return "extension";
    }
    throw internal_error("unknown ambient kind");
}

namespace {

Subspace trace_zero_space(std::size_t n) {
    Matrix constraint = Matrix::from_rows({flatten(Matrix::identity(n))});
    return Subspace::span(constraint.kernel(), n * n);
}

// { Z : Z^T G + G Z = 0 } as a subspace of matrix coordinates.
Subspace form_compatible_space(const Matrix& g) {
    const std::size_t n = g.rows();
    Matrix system(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // Column for the matrix unit E_ab.
            Matrix unit(n, n);
            unit.at(a, b) = 1;
            Matrix image = unit.transposed() * g + g * unit;
            Vec col = flatten(image);
            for (std::size_t r = 0; r < n * n; ++r) system.at(r, a * n + b) = col[r];
        }
    }
    return Subspace::span(system.kernel(), n * n);
}

bool gram_nondegenerate(const Matrix& g) {
    return g.rows() == g.cols() && g.kernel().rows() == 0;
}

std::size_t classical_solvable_bound(AmbientKind kind, std::size_t n, const Pairing& form) {
    // Solvable subalgebras are conjugate into a Borel over the closure, so
    // the Borel dimension bounds them; only valid when the form is
    // nondegenerate (reductive ambient).
    switch (kind) {
        case AmbientKind::gl: return n * (n + 1) / 2;
        case AmbientKind::sl: return n * (n + 1) / 2 - 1;
        case AmbientKind::so: {
            if (!gram_nondegenerate(form.gram())) return 0;
            std::size_t m = n / 2;
            return n % 2 == 0 ? m * m : m * m + m;
        }
        case AmbientKind::sp: {
            if (!gram_nondegenerate(form.gram())) return 0;
            std::size_t m = n / 2;
            return m * m + m;
        }
        case AmbientKind::extension: return 0;
    }
    return 0;
}

}  // namespace

Ambient make_ambient(AmbientKind kind, std::size_t n) {
    if (kind != AmbientKind::gl && kind != AmbientKind::sl)
        throw input_error("only gl and sl take a bare dimension; so/sp need a form");
    if (n == 0) throw input_error("ambient needs a positive dimension");
    auto impl = std::make_shared<Ambient::Impl>();
    impl->kind = kind;
    impl->n = n;
    impl->form = Pairing::standard_dual(n);
    impl->space = kind == AmbientKind::gl ? Subspace::full(n * n) : trace_zero_space(n);
    impl->solvable_bound = classical_solvable_bound(kind, n, impl->form);
    Ambient a;
    a.impl_ = std::move(impl);
    return a;
}

Ambient make_ambient(AmbientKind kind, const Pairing& form) {
    if (kind != AmbientKind::so && kind != AmbientKind::sp)
        throw input_error("only so and sp are built from a form");
    if (!form.is_form()) throw input_error("so/sp need a square gram");
    if (kind == AmbientKind::so && !form.is_symmetric())
        throw input_error("so needs a symmetric form");
    if (kind == AmbientKind::sp && !form.is_antisymmetric())
        throw input_error("sp needs an antisymmetric form");
    auto impl = std::make_shared<Ambient::Impl>();
    impl->kind = kind;
    impl->n = form.left_dim();
    impl->form = form;
    impl->space = form_compatible_space(form.gram());
    impl->solvable_bound = classical_solvable_bound(kind, impl->n, form);
    Ambient a;
    a.impl_ = std::move(impl);
    return a;
}

Ambient extend_ambient(const Ambient& base, std::vector<Matrix> extra) {
    if (extra.empty()) throw input_error("extension needs at least one extra matrix");
    const std::size_t n = base.n();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < base.space().dim(); ++i) rows.push_back(base.space().basis_row(i));
    for (const Matrix& x : extra) {
        if (x.rows() != n || x.cols() != n)
            throw input_error("extension matrix has wrong shape");
        rows.push_back(flatten(x));
    }
    Subspace space = Subspace::span(rows, n * n);
    if (space.dim() == base.space().dim())
        throw input_error("extension matrices already lie in the base ambient");

    std::vector<Matrix> base_basis;
    for (std::size_t i = 0; i < base.space().dim(); ++i)
        base_basis.push_back(unflatten(base.space().basis_row(i), n));
    for (std::size_t i = 0; i < extra.size(); ++i) {
        for (std::size_t j = 0; j < base_basis.size(); ++j) {
            if (!base.space().contains(flatten(bracket(extra[i], base_basis[j]))))
                throw input_error("extension bracket [extra " + std::to_string(i) +
                                  ", base " + std::to_string(j) + "] leaves the base");
        }
        for (std::size_t j = 0; j < extra.size(); ++j) {
            if (!space.contains(flatten(bracket(extra[i], extra[j]))))
                throw input_error("extension bracket [extra " + std::to_string(i) +
                                  ", extra " + std::to_string(j) + "] leaves the extension");
        }
    }

    auto impl = std::make_shared<Ambient::Impl>();
    impl->kind = AmbientKind::extension;
    impl->n = n;
    impl->form = base.form();
    impl->space = std::move(space);
    impl->base = std::make_shared<Ambient>(base);
    impl->extra = std::move(extra);
    std::size_t base_bound = base.solvable_dim_bound();
    impl->solvable_bound = base_bound == 0 ? 0 : base_bound + impl->extra.size();
    Ambient a;
    a.impl_ = std::move(impl);
    return a;
}

LieSubalgebra::LieSubalgebra(Ambient ambient, Subspace space)
    : ambient_(std::move(ambient)), space_(std::move(space)) {
    const std::size_t n = ambient_.n();
    if (space_.ambient_dim() != n * n)
        throw input_error("subalgebra space must live in matrix coordinates");
    if (!ambient_.space().contains(space_))
        throw input_error("subalgebra is not contained in its ambient");
    std::vector<Matrix> basis = basis_matrices();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!space_.contains(flatten(bracket(basis[i], basis[j]))))
                throw input_error("subalgebra is not closed under the bracket (basis pair " +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
}

LieSubalgebra::LieSubalgebra(Ambient ambient, Subspace space, trusted_tag)
    : ambient_(std::move(ambient)), space_(std::move(space)) {}

LieSubalgebra LieSubalgebra::trusted(Ambient ambient, Subspace space) {
    require_internal(space.ambient_dim() == ambient.n() * ambient.n(),
                     "trusted subalgebra in wrong coordinates");
    return LieSubalgebra(std::move(ambient), std::move(space), trusted_tag{});
}

Matrix LieSubalgebra::basis_matrix(std::size_t i) const {
    return unflatten(space_.basis_row(i), ambient_.n());
}

std::vector<Matrix> LieSubalgebra::basis_matrices() const {
    std::vector<Matrix> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_matrix(i));
    return out;
}

bool LieSubalgebra::operator==(const LieSubalgebra& other) const {
    return ambient_ == other.ambient_ && space_ == other.space_;
}

Matrix embed_tensor(const Vec& v, const Vec& w, const Pairing& p, TensorFlavor flavor) {
    if (v.size() != p.left_dim())
        throw input_error("embed_tensor: v must live on the pairing's left side");
    if (w.size() != p.right_dim())
        throw input_error("embed_tensor: w must live on the pairing's right side");
    const std::size_t n = v.size();
    Vec gw = p.gram().apply(w);
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(gw[j]) != 0) out.at(i, j) = v[i] * gw[j];
    }
    if (flavor == TensorFlavor::otimes) return out;
    if (!p.is_form())
        throw input_error("wedge/amp need a form so both slots live in one space");
    Vec gv = p.gram().apply(v);
    Matrix swapped(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(w[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(gv[j]) != 0) swapped.at(i, j) = w[i] * gv[j];
    }
    return flavor == TensorFlavor::wedge ? out - swapped : out + swapped;
}

namespace {

TensorFlavor kind_flavor(AmbientKind kind) {
    switch (kind) {
        case AmbientKind::gl:
        case AmbientKind::sl: return TensorFlavor::otimes;
        case AmbientKind::so: return TensorFlavor::wedge;
        case AmbientKind::sp: return TensorFlavor::amp;
        case AmbientKind::extension: break;
    }
    throw precondition_error("tensor formulas are defined for gl/sl/so/sp only");
}

void check_flag_ambient(const GeneralizedFlag& f, const Ambient& a) {
    if (f.ambient_dim() != a.n())
        throw input_error("flag and ambient act on different spaces");
}

void require_isotropic_flag(const GeneralizedFlag& f, const Ambient& a) {
    if (a.kind() != AmbientKind::so && a.kind() != AmbientKind::sp) return;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!classify(f.pair(i).succ, a.form()).is_isotropic)
            throw precondition_error("so/sp tensor formulas need an isotropic flag (pair " +
                                     std::to_string(i) + ")");
}

LieSubalgebra stabilizer_brute(const GeneralizedFlag& f, const Ambient& a) {
    const std::size_t n = a.n();
    const std::size_t d = a.space().dim();
    std::vector<Matrix> basis;
    basis.reserve(d);
    for (std::size_t j = 0; j < d; ++j) basis.push_back(unflatten(a.space().basis_row(j), n));

    RrefAccumulator constraints(d);
    for (const Subspace& member : f.members()) {
        if (member.dim() == 0 || member.dim() == n) continue;
        Subspace ann = member.annihilator();
        for (std::size_t w = 0; w < member.dim(); ++w) {
            Vec mw = member.basis_row(w);
            std::vector<Vec> images;
            images.reserve(d);
            for (std::size_t j = 0; j < d; ++j) images.push_back(basis[j].apply(mw));
            for (std::size_t r = 0; r < ann.dim(); ++r) {
                Vec arow = ann.basis_row(r);
                Vec crow(d);
                for (std::size_t j = 0; j < d; ++j) {
                    Rational acc;
                    for (std::size_t t = 0; t < n; ++t)
                        if (sgn(arow[t]) != 0 && sgn(images[j][t]) != 0)
                            acc += arow[t] * images[j][t];
                    crow[j] = acc;
                }
                constraints.insert(std::move(crow));
            }
        }
    }

    Subspace solutions =
        constraints.dim() == 0
            ? Subspace::full(d)
            : Subspace::span(Matrix::from_rows(constraints.rows()).kernel(), d);
    return LieSubalgebra::trusted(a, detail::lift_coordinates(solutions, a.space()));
}

LieSubalgebra stabilizer_formula(const GeneralizedFlag& f, const Ambient& a) {
    TensorFlavor flavor = kind_flavor(a.kind());
    require_isotropic_flag(f, a);
    const std::size_t n = a.n();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const FlagPair& pr = f.pair(i);
        Subspace dual = perp(pr.pred, a.form(), Side::left);
        for (std::size_t v = 0; v < pr.succ.dim(); ++v) {
            Vec vv = pr.succ.basis_row(v);
            for (std::size_t w = 0; w < dual.dim(); ++w) {
                Matrix t = embed_tensor(vv, dual.basis_row(w), a.form(), flavor);
                if (!t.is_zero()) rows.push_back(flatten(t));
            }
        }
    }
    Subspace space = Subspace::span(rows, n * n).intersect(a.space());
    return LieSubalgebra::trusted(a, std::move(space));
}

}  // namespace

LieSubalgebra stabilizer(const GeneralizedFlag& f, const Ambient& a, StabilizerMode mode) {
    check_flag_ambient(f, a);
    if (mode == StabilizerMode::brute) return stabilizer_brute(f, a);
    if (a.kind() == AmbientKind::extension)
        throw precondition_error("formula stabilizer is defined for gl/sl/so/sp only");
    return stabilizer_formula(f, a);
}

LieSubalgebra nilpotent_subalgebra(const GeneralizedFlag& f, const Ambient& a) {
    check_flag_ambient(f, a);
    TensorFlavor flavor = kind_flavor(a.kind());
    require_isotropic_flag(f, a);
    const std::size_t n = a.n();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const FlagPair& pr = f.pair(i);
        Subspace dual = perp(pr.succ, a.form(), Side::left);
        for (std::size_t v = 0; v < pr.succ.dim(); ++v) {
            Vec vv = pr.succ.basis_row(v);
            for (std::size_t w = 0; w < dual.dim(); ++w) {
                Matrix t = embed_tensor(vv, dual.basis_row(w), a.form(), flavor);
                if (!t.is_zero()) rows.push_back(flatten(t));
            }
        }
    }
    Subspace space = Subspace::span(rows, n * n);
    require_internal(a.space().contains(space), "nilpotent part escapes the ambient");
    return LieSubalgebra::trusted(a, std::move(space));
}

namespace {

// Dual line choices live on the right side for gl/sl and back in V for
// so/sp; side-aware pairing of a candidate m against a flag vector.
Rational pair_lm(const Pairing& form, const Vec& l, const Vec& m) {
    return form.pair(l, m);
}

Vec canonical_gap_vector(const FlagPair& pr) {
    for (std::size_t i = 0; i < pr.succ.dim(); ++i) {
        Vec row = pr.succ.basis_row(i);
        if (!pr.pred.contains(row)) {
            Vec reduced = pr.pred.reduce(row);
            return reduced;
        }
    }
    throw internal_error("flag pair without a gap vector");
}

}  // namespace

LineSystem line_system_from_flag(const GeneralizedFlag& f, const Ambient& a) {
    check_flag_ambient(f, a);
    if (a.kind() == AmbientKind::extension)
        throw precondition_error("line systems are defined for gl/sl/so/sp only");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.pair(i).succ.dim() != f.pair(i).pred.dim() + 1)
            throw precondition_error("line systems need a maximal flag (codimension-1 pairs)");
    require_isotropic_flag(f, a);

    const std::size_t n = a.n();
    const Pairing& form = a.form();
    const bool classical_pair = a.kind() == AmbientKind::so || a.kind() == AmbientKind::sp;

    std::vector<Vec> ls;
    for (std::size_t i = 0; i < f.size(); ++i) ls.push_back(canonical_gap_vector(f.pair(i)));

    LineSystem out;
    for (std::size_t g = 0; g < f.size(); ++g) {
        // m must kill pred_g, pair to zero with every other chosen line and
        // nontrivially with l_g; so additionally needs m isotropic and
        // orthogonal to the earlier m's.
        std::vector<Vec> constraint_rows;
        const Subspace& pred = f.pair(g).pred;
        for (std::size_t r = 0; r < pred.dim(); ++r)
            constraint_rows.push_back(form.gram().transposed().apply(pred.basis_row(r)));
        for (std::size_t c = g + 1; c < f.size(); ++c)
            constraint_rows.push_back(form.gram().transposed().apply(ls[c]));
        if (classical_pair) {
            for (const auto& line : out.lines)
                constraint_rows.push_back(form.gram().transposed().apply(line.m));
        }
        Subspace candidates =
            constraint_rows.empty()
                ? Subspace::full(n)
                : Subspace::span(Matrix::from_rows(constraint_rows).kernel(), n);

        Vec chosen;
        if (a.kind() == AmbientKind::so) {
            // Rational isotropic vector with <l_g, m> nonzero: try basis rows,
            // then row pairs via the induced quadratic.
            for (std::size_t i = 0; i < candidates.dim() && chosen.empty(); ++i) {
                Vec r = candidates.basis_row(i);
                if (is_zero(form.pair(r, r)) && !is_zero(pair_lm(form, ls[g], r))) chosen = r;
            }
            for (std::size_t i = 0; i < candidates.dim() && chosen.empty(); ++i) {
                for (std::size_t j = 0; j < candidates.dim() && chosen.empty(); ++j) {
                    if (i == j) continue;
                    Vec ri = candidates.basis_row(i);
                    Vec rj = candidates.basis_row(j);
                    Rational qi = form.pair(ri, ri);
                    Rational qj = form.pair(rj, rj);
                    Rational qij = form.pair(ri, rj);
                    std::vector<Rational> ts;
                    if (is_zero(qj)) {
                        if (!is_zero(qij)) ts.push_back(-qi / (2 * qij));
                    } else {
                        Rational disc = qij * qij - qi * qj;
                        auto root = rational_sqrt(disc);
                        if (root) {
                            ts.push_back((-qij + *root) / qj);
                            ts.push_back((-qij - *root) / qj);
                        }
                    }
                    for (const Rational& t : ts) {
                        Vec m(n);
                        for (std::size_t k = 0; k < n; ++k) m[k] = ri[k] + t * rj[k];
                        if (!is_zero(pair_lm(form, ls[g], m)) && is_zero(form.pair(m, m))) {
                            chosen = m;
                            break;
                        }
                    }
                }
            }
        } else {
            for (std::size_t i = 0; i < candidates.dim(); ++i) {
                Vec r = candidates.basis_row(i);
                if (!is_zero(pair_lm(form, ls[g], r))) {
                    chosen = r;
                    break;
                }
            }
        }
        if (chosen.empty())
            throw computation_error("no rational line system: pair " + std::to_string(g) +
                                    " admits no dual line");
        Rational scale = pair_lm(form, ls[g], chosen);
        for (auto& x : chosen) x /= scale;
        out.lines.push_back({g, ls[g], std::move(chosen)});
    }
    return out;
}

LieSubalgebra toral_subalgebra(const LineSystem& ls, const Ambient& a) {
    if (a.kind() == AmbientKind::extension)
        throw precondition_error("toral formulas are defined for gl/sl/so/sp only");
    TensorFlavor flavor = kind_flavor(a.kind());
    const Pairing& form = a.form();
    const bool classical_pair = a.kind() == AmbientKind::so || a.kind() == AmbientKind::sp;

    for (const auto& line : ls.lines) {
        if (line.l.size() != a.n() || line.m.size() != (flavor == TensorFlavor::otimes
                                                            ? form.right_dim()
                                                            : a.n()))
            throw input_error("line system vectors have wrong dimensions");
    }
    for (std::size_t i = 0; i < ls.lines.size(); ++i) {
        for (std::size_t j = 0; j < ls.lines.size(); ++j) {
            Rational v = form.pair(ls.lines[i].l, ls.lines[j].m);
            bool diagonal = ls.lines[i].pair_index == ls.lines[j].pair_index;
            if (diagonal && is_zero(v))
                throw input_error("line system degenerate on matching pair " +
                                  std::to_string(ls.lines[i].pair_index));
            if (!diagonal && !is_zero(v))
                throw input_error("line system pairs (" + std::to_string(ls.lines[i].pair_index) +
                                  "," + std::to_string(ls.lines[j].pair_index) +
                                  ") fail the delta condition");
            if (classical_pair && !is_zero(form.pair(ls.lines[i].m, ls.lines[j].m)))
                throw input_error("line system M spaces not mutually orthogonal at (" +
                                  std::to_string(ls.lines[i].pair_index) + "," +
                                  std::to_string(ls.lines[j].pair_index) + ")");
        }
    }

    const std::size_t n = a.n();
    std::vector<Vec> rows;
    for (const auto& line : ls.lines) {
        Matrix t = embed_tensor(line.l, line.m, form, flavor);
        if (!t.is_zero()) rows.push_back(flatten(t));
    }
    Subspace space = Subspace::span(rows, n * n).intersect(a.space());
    return LieSubalgebra::trusted(a, std::move(space));
}

Subspace orbit(const LieSubalgebra& b, const Vec& u) {
    const std::size_t n = b.ambient().n();
    if (u.size() != n) throw input_error("orbit vector has wrong dimension");
    std::vector<Vec> rows;
    rows.reserve(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) rows.push_back(b.basis_matrix(i).apply(u));
    return Subspace::span(rows, n);
}

std::string element_type_name(ElementType t) {
    switch (t) {
        case ElementType::nilpotent: return "nilpotent";
        case ElementType::semisimple: return "semisimple";
        case ElementType::mixed: return "mixed";
    }
    throw internal_error("unknown element type");
}

ElementType element_type(const Matrix& z) {
    if (z.rows() != z.cols() || z.rows() == 0)
        throw input_error("element_type needs a nonempty square matrix");
    Matrix power = z;
    for (std::size_t k = 1; k <= z.rows(); ++k) {
        if (power.is_zero()) return ElementType::nilpotent;
        if (k < z.rows()) power = power * z;
    }
    detail::Poly cp = z.char_poly();
    detail::Poly sf = detail::poly_squarefree_part(cp);
    if (detail::poly_eval(sf, z).is_zero()) return ElementType::semisimple;
    return ElementType::mixed;
}

}  // namespace flagstab
