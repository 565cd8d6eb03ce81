#include "flagstab/enumerate.hpp"

#include <algorithm>
#include <numeric>

#include "flagstab/errors.hpp"

namespace flagstab {

namespace {

Vec unit(std::size_t dim, std::size_t pos) {
    Vec v(dim);
    v[pos] = 1;
    return v;
}

// Prefix spans of the given vectors, from zero up to their full span.
GeneralizedFlag prefix_flag(const std::vector<Vec>& order, std::size_t dim) {
    std::vector<Subspace> members;
    members.reserve(order.size() + 1);
    members.push_back(Subspace::span(std::vector<Vec>{}, dim));
    std::vector<Vec> prefix;
    for (const Vec& v : order) {
        prefix.push_back(v);
        members.push_back(Subspace::span(prefix, dim));
    }
    Chain c(members, dim);
    return fl_from_chain(c, members.back());
}

}  // namespace

std::vector<GeneralizedFlag> coordinate_maximal_flags(std::size_t n) {
    if (n == 0) throw input_error("coordinate flags need a positive dimension");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<GeneralizedFlag> flags;
    do {
        std::vector<Vec> order;
        order.reserve(n);
        for (std::size_t p : perm) order.push_back(unit(n, p));
        flags.push_back(prefix_flag(order, n));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return flags;
}

std::vector<GeneralizedFlag> basis_aligned_isotropic_flags(const Pairing& p) {
    if (!p.is_form()) throw input_error("isotropic flags need a form");
    const std::size_t dim = p.left_dim();
    const std::size_t m = static_cast<std::size_t>(signed_level(dim));
    if (m == 0) throw input_error("isotropic flags need level at least 1");

    std::vector<GeneralizedFlag> flags;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<long> chosen;
        chosen.reserve(m);
        for (std::size_t i = 1; i <= m; ++i) {
            long idx = static_cast<long>(i);
            chosen.push_back((mask >> (i - 1)) & 1 ? -idx : idx);
        }
        std::sort(chosen.begin(), chosen.end());
        do {
            std::vector<Vec> order;
            order.reserve(m);
            for (long idx : chosen) order.push_back(signed_unit(idx, dim));
            flags.push_back(prefix_flag(order, dim));
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    }
    return flags;
}

GeneralizedFlag extend_isotropic_to_compatible(const GeneralizedFlag& iso, const Pairing& p) {
    if (!p.is_form() || p.left_dim() != iso.ambient_dim())
        throw input_error("flag and form dimensions disagree");
    std::vector<Subspace> members = iso.members();
    if (members.empty()) throw input_error("cannot extend an empty flag");
    const Subspace& top = members.back();
    if (!classify(top, p).is_maximal_isotropic)
        throw input_error("support must be maximal isotropic");

    std::vector<Subspace> full = members;
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        Subspace q = perp(*it, p);
        if (q != top) full.push_back(std::move(q));
    }
    Chain c(full, iso.ambient_dim());
    return fl_from_chain(c, Subspace::full(iso.ambient_dim()));
}

}  // namespace flagstab
