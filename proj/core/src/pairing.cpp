#include "flagstab/pairing.hpp"

#include <algorithm>

#include "flagstab/errors.hpp"

namespace flagstab {

bool dim_has_zero_index(std::size_t dim) {
    return dim % 2 == 1;
}

long signed_level(std::size_t dim) {
    return static_cast<long>(dim / 2);
}

std::size_t signed_position(long index, std::size_t dim) {
    long n = signed_level(dim);
    bool odd = dim_has_zero_index(dim);
    if (index < -n || index > n || (index == 0 && !odd))
        throw input_error("signed index out of range for this dimension");
    if (index < 0) return static_cast<std::size_t>(index + n);
    if (index == 0) return static_cast<std::size_t>(n);
    return static_cast<std::size_t>(n + index - (odd ? 0 : 1));
}

long signed_index_at(std::size_t position, std::size_t dim) {
    long n = signed_level(dim);
    bool odd = dim_has_zero_index(dim);
    if (position >= dim) throw input_error("position out of range");
    long p = static_cast<long>(position);
    if (p < n) return p - n;
    if (odd) return p - n;  // p == n gives 0
    return p - n + 1;
}

Vec signed_unit(long index, std::size_t dim) {
    Vec v(dim);
    v[signed_position(index, dim)] = 1;
    return v;
}

std::string pairing_kind_name(PairingKind kind) {
    switch (kind) {
        case PairingKind::standard_dual: return "standard_dual";
        case PairingKind::split_symmetric: return "split_symmetric";
        case PairingKind::split_symplectic: return "split_symplectic";
        case PairingKind::explicit_gram: return "explicit";
    }
    throw internal_error("unknown pairing kind");
}

Pairing Pairing::standard_dual(std::size_t dim) {
    return Pairing(PairingKind::standard_dual, Matrix::identity(dim));
}

Pairing Pairing::split_symmetric(std::size_t dim) {
    if (dim == 0) throw input_error("split_symmetric needs positive dimension");
    Matrix g(dim, dim);
    long n = signed_level(dim);
    for (long i = -n; i <= n; ++i) {
        if (i == 0) continue;
        g.at(signed_position(i, dim), signed_position(-i, dim)) = 1;
    }
    if (dim_has_zero_index(dim)) {
        std::size_t z = signed_position(0, dim);
        g.at(z, z) = 1;
    }
    return Pairing(PairingKind::split_symmetric, std::move(g));
}

Pairing Pairing::split_symplectic(std::size_t dim) {
    if (dim == 0 || dim % 2 != 0)
        throw input_error("split_symplectic needs positive even dimension");
    Matrix g(dim, dim);
    long n = signed_level(dim);
    for (long i = -n; i <= n; ++i) {
        if (i == 0) continue;
        g.at(signed_position(i, dim), signed_position(-i, dim)) = (i > 0) ? 1 : -1;
    }
    return Pairing(PairingKind::split_symplectic, std::move(g));
}

Pairing Pairing::explicit_gram(Matrix gram) {
    if (gram.rows() == 0 || gram.cols() == 0)
        throw input_error("explicit gram must be nonempty");
    return Pairing(PairingKind::explicit_gram, std::move(gram));
}

bool Pairing::is_symmetric() const {
    return is_form() && gram_ == gram_.transposed();
}

bool Pairing::is_antisymmetric() const {
    return is_form() && gram_ == gram_.transposed().scaled(-1);
}

Rational Pairing::pair(const Vec& x, const Vec& y) const {
    if (x.size() != left_dim() || y.size() != right_dim())
        throw input_error("pair: vector sizes do not match pairing");
    Vec gy = gram_.apply(y);
    Rational acc;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0 && sgn(gy[i]) != 0) acc += x[i] * gy[i];
    return acc;
}

Side opposite(Side side) {
    return side == Side::left ? Side::right : Side::left;
}

Subspace perp(const Subspace& s, const Pairing& p, Side side) {
    std::size_t own = side == Side::left ? p.left_dim() : p.right_dim();
    std::size_t other = side == Side::left ? p.right_dim() : p.left_dim();
    if (s.ambient_dim() != own)
        throw input_error("perp: subspace does not live on the requested side");
    if (s.dim() == 0) return Subspace::full(other);
    Matrix constraints = side == Side::left ? s.basis() * p.gram()
                                            : s.basis() * p.gram().transposed();
    Subspace out(other);
    Matrix k = constraints.kernel();
    return Subspace::span(std::move(k), other);
}

Subspace closure(const Subspace& s, const Pairing& p, Side side) {
    return perp(perp(s, p, side), p, opposite(side));
}

bool is_closed(const Subspace& s, const Pairing& p, Side side) {
    return closure(s, p, side) == s;
}

IsotropyReport classify(const Subspace& s, const Pairing& p) {
    if (!p.is_form())
        throw precondition_error("classify needs a form (square gram)");
    IsotropyReport report;
    Subspace sp = perp(s, p, Side::left);
    report.is_closed = perp(sp, p, Side::right) == s;
    report.is_isotropic = sp.contains(s);
    report.is_coisotropic = s.contains(sp);
    if (p.is_antisymmetric()) {
        report.is_maximal_isotropic = (s == sp);
    } else if (p.is_symmetric()) {
        report.is_maximal_isotropic =
            report.is_closed && report.is_isotropic && sp.dim() <= s.dim() + 1;
    } else {
        report.is_maximal_isotropic = false;
    }
    return report;
}

std::vector<Subspace> maximal_isotropic_extensions(const Subspace& l, const Pairing& p) {
    if (!p.is_symmetric())
        throw precondition_error("maximal_isotropic_extensions needs a symmetric form");
    Subspace w = perp(l, p, Side::left);
    if (!w.contains(l) || !is_closed(l, p))
        throw precondition_error("maximal_isotropic_extensions needs a closed isotropic subspace");
    if (w.dim() != l.dim() + 2)
        throw precondition_error("maximal_isotropic_extensions needs dim(perp/L) = 2");

    // Section of perp(L)/L: basis rows of perp(L) reduced mod L, re-spanned.
    std::vector<Vec> reduced;
    for (std::size_t i = 0; i < w.dim(); ++i) {
        Vec r = l.reduce(w.basis_row(i));
        if (!std::all_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) == 0; }))
            reduced.push_back(std::move(r));
    }
    Subspace section = Subspace::span(reduced, l.ambient_dim());
    require_internal(section.dim() == 2, "quotient section is not a plane");
    Vec s1 = section.basis_row(0);
    Vec s2 = section.basis_row(1);

    Rational a = p.pair(s1, s1);
    Rational b = p.pair(s1, s2);
    Rational c = p.pair(s2, s2);

    // Isotropic lines of [a b; b c]: solutions of a t^2 + 2 b t u + c u^2 = 0.
    auto combine = [&](const Rational& t, const Rational& u) {
        Vec v(l.ambient_dim());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = t * s1[j] + u * s2[j];
        return v;
    };
    std::vector<Vec> lines;
    if (is_zero(a)) {
        if (is_zero(b))
            throw precondition_error("induced plane is degenerate");
        lines.push_back(combine(1, 0));
        if (is_zero(c)) {
            lines.push_back(combine(0, 1));
        } else {
            lines.push_back(combine(-c, 2 * b));
        }
    } else {
        Rational disc = b * b - a * c;
        if (is_zero(disc))
            throw precondition_error("induced plane is degenerate");
        auto root = rational_sqrt(disc);
        if (!root)
            throw computation_error("induced plane has no rational isotropic line");
        lines.push_back(combine((-b + *root) / a, 1));
        lines.push_back(combine((-b - *root) / a, 1));
    }

    std::vector<Subspace> out;
    for (const Vec& v : lines) {
        Subspace ext = l.sum(Subspace::span({v}, l.ambient_dim()));
        require_internal(ext.dim() == l.dim() + 1, "extension line lies in L");
        require_internal(classify(ext, p).is_isotropic, "extension is not isotropic");
        out.push_back(std::move(ext));
    }
    require_internal(out[0] != out[1], "isotropic extension lines coincide");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace flagstab
