#include "flagstab/limits.hpp"

#include <algorithm>
#include <cstdlib>

#include "flagstab/errors.hpp"

namespace flagstab {

std::string domain_kind_name(DomainKind d) {
    return d == DomainKind::positive ? "positive" : "signed";
}

std::size_t level_dim(DomainKind d, long n) {
    if (n < 1) throw input_error("level must be at least 1");
    return d == DomainKind::positive ? static_cast<std::size_t>(n)
                                     : static_cast<std::size_t>(2 * n);
}

bool valid_index(DomainKind d, long i) {
    return d == DomainKind::positive ? i >= 1 : i != 0;
}

bool index_in_level(DomainKind d, long i, long n) {
    return valid_index(d, i) && i <= n && i >= (d == DomainKind::positive ? 1 : -n);
}

std::size_t index_position(DomainKind d, long i, long n) {
    if (!index_in_level(d, i, n))
        throw input_error("index " + std::to_string(i) + " is outside level " + std::to_string(n));
    return d == DomainKind::positive ? static_cast<std::size_t>(i - 1)
                                     : signed_position(i, level_dim(d, n));
}

long index_at_position(DomainKind d, std::size_t pos, long n) {
    if (pos >= level_dim(d, n)) throw input_error("position outside the level window");
    return d == DomainKind::positive ? static_cast<long>(pos) + 1
                                     : signed_index_at(pos, level_dim(d, n));
}

long next_index(DomainKind d, long i) {
    long j = i + 1;
    if (d == DomainKind::signed_indices && j == 0) j = 1;
    return j;
}

long prev_index(DomainKind d, long i) {
    long j = i - 1;
    if (d == DomainKind::signed_indices && j == 0) j = -1;
    return j;
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(DomainKind domain, std::vector<Ray> rays, std::vector<long> singles)
    : domain_(domain) {
    for (long s : singles) {
        if (!valid_index(domain_, s))
            throw input_error("index " + std::to_string(s) + " is not in the domain");
        singles_.insert(s);
    }
    for (const Ray& r : rays) {
        if (!valid_index(domain_, r.start))
            throw input_error("ray start " + std::to_string(r.start) + " is not in the domain");
        if (r.dir == RayDir::down) {
            if (domain_ == DomainKind::positive) {
                // {..., start} is the finite set {1..start} here.
                for (long i = 1; i <= r.start; ++i) singles_.insert(i);
            } else {
                down_ = down_ ? std::max(*down_, r.start) : r.start;
            }
        } else {
            up_ = up_ ? std::min(*up_, r.start) : r.start;
        }
    }
    normalize();
}

IndexSet IndexSet::all(DomainKind domain) {
    if (domain == DomainKind::positive) return IndexSet(domain, {Ray{RayDir::up, 1}}, {});
    return IndexSet(domain, {Ray{RayDir::down, -1}, Ray{RayDir::up, 1}}, {});
}

void IndexSet::normalize() {
    for (auto it = singles_.begin(); it != singles_.end();) {
        if ((down_ && *it <= *down_) || (up_ && *it >= *up_)) it = singles_.erase(it);
        else ++it;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        if (down_) {
            auto it = singles_.find(next_index(domain_, *down_));
            if (it != singles_.end()) {
                down_ = *it;
                singles_.erase(it);
                changed = true;
            }
        }
        if (up_) {
            long prv = prev_index(domain_, *up_);
            if (valid_index(domain_, prv)) {
                auto it = singles_.find(prv);
                if (it != singles_.end()) {
                    up_ = prv;
                    singles_.erase(it);
                    changed = true;
                }
            }
        }
    }
    if (down_ && up_ && *up_ <= next_index(domain_, *down_)) {
        down_ = -1;
        up_ = 1;
        singles_.clear();
    }
}

bool IndexSet::is_all() const {
    if (domain_ == DomainKind::positive) return up_ && *up_ == 1;
    return down_ && *down_ == -1 && up_ && *up_ == 1;
}

bool IndexSet::contains(long i) const {
    if (!valid_index(domain_, i)) return false;
    if (down_ && i <= *down_) return true;
    if (up_ && i >= *up_) return true;
    return singles_.count(i) > 0;
}

bool IndexSet::subset_of(const IndexSet& other) const {
    if (domain_ != other.domain_) throw input_error("index sets live in different domains");
    if (down_ && !(other.down_ && *down_ <= *other.down_)) return false;
    if (up_ && !(other.up_ && *up_ >= *other.up_)) return false;
    for (long s : singles_)
        if (!other.contains(s)) return false;
    return true;
}

bool IndexSet::intersects_ray(const Ray& r) const {
    if (r.dir == RayDir::up) {
        if (up_) return true;
        if (down_ && *down_ >= r.start) return true;
        return !singles_.empty() && *singles_.rbegin() >= r.start;
    }
    if (down_) return true;
    if (up_ && *up_ <= r.start) return true;
    return !singles_.empty() && *singles_.begin() <= r.start;
}

std::vector<long> IndexSet::members_at(long n) const {
    std::vector<long> out;
    const std::size_t dim = level_dim(domain_, n);
    for (std::size_t pos = 0; pos < dim; ++pos) {
        long i = index_at_position(domain_, pos, n);
        if (contains(i)) out.push_back(i);
    }
    return out;
}

bool IndexSet::infinite_difference(const IndexSet& inner) const {
    return (down_ && !inner.down_) || (up_ && !inner.up_);
}

IndexSet IndexSet::union_with(const IndexSet& other) const {
    if (domain_ != other.domain_) throw input_error("index sets live in different domains");
    std::vector<Ray> rays;
    std::vector<long> singles;
    for (const IndexSet* s : {this, &other}) {
        if (s->down_) rays.push_back(Ray{RayDir::down, *s->down_});
        if (s->up_) rays.push_back(Ray{RayDir::up, *s->up_});
        singles.insert(singles.end(), s->singles_.begin(), s->singles_.end());
    }
    return IndexSet(domain_, rays, singles);
}

long IndexSet::feature_radius() const {
    long r = 0;
    if (down_) r = std::max(r, std::labs(*down_));
    if (up_) r = std::max(r, std::labs(*up_));
    for (long s : singles_) r = std::max(r, std::labs(s));
    return r;
}

// ---------------------------------------------------------------------------
// StableSubspace

namespace {

long template_radius(const VecTemplate& t) {
    long r = 0;
    for (const auto& [i, c] : t) r = std::max(r, std::labs(i));
    return r;
}

// dst += c * src, dropping coordinates that cancel.
void template_axpy(VecTemplate& dst, const Rational& c, const VecTemplate& src) {
    for (const auto& [i, v] : src) {
        auto it = dst.find(i);
        if (it == dst.end()) {
            Rational add = c * v;
            if (sgn(add) != 0) dst.emplace(i, std::move(add));
        } else {
            it->second += c * v;
            if (sgn(it->second) == 0) dst.erase(it);
        }
    }
}

VecTemplate strip_covered(VecTemplate t, const IndexSet& idx) {
    for (auto it = t.begin(); it != t.end();) {
        if (sgn(it->second) == 0 || idx.contains(it->first)) it = t.erase(it);
        else ++it;
    }
    return t;
}

Vec template_dense(const VecTemplate& t, DomainKind domain, long level) {
    Vec v(level_dim(domain, level));
    for (const auto& [i, c] : t) v[index_position(domain, i, level)] = c;
    return v;
}

}  // namespace

StableSubspace::StableSubspace(IndexSet index_part, std::vector<VecTemplate> extra)
    : index_part_(std::move(index_part)) {
    for (const VecTemplate& t : extra)
        for (const auto& [i, c] : t)
            if (!valid_index(domain(), i))
                throw input_error("template index " + std::to_string(i) + " is not in the domain");

    // Echelon by smallest support index with full back-substitution; the
    // index part absorbs whatever reduces to a single coordinate.
    std::vector<VecTemplate> ech;
    for (VecTemplate raw : extra) {
        VecTemplate t = strip_covered(std::move(raw), index_part_);
        for (const VecTemplate& p : ech) {
            auto hit = t.find(p.begin()->first);
            if (hit != t.end()) {
                Rational c = -hit->second;
                template_axpy(t, c, p);
            }
        }
        if (t.empty())
            throw input_error("extra template is dependent on the index part or earlier extras");
        Rational lead = t.begin()->second;
        for (auto& [i, c] : t) c = c / lead;
        long piv = t.begin()->first;
        for (VecTemplate& p : ech) {
            auto hit = p.find(piv);
            if (hit != p.end()) {
                Rational c = -hit->second;
                template_axpy(p, c, t);
            }
        }
        ech.push_back(std::move(t));
    }

    std::vector<long> promoted;
    for (auto it = ech.begin(); it != ech.end();) {
        if (it->size() == 1) {
            promoted.push_back(it->begin()->first);
            it = ech.erase(it);
        } else {
            ++it;
        }
    }
    if (!promoted.empty())
        index_part_ = index_part_.union_with(IndexSet(domain(), {}, promoted));

    std::sort(ech.begin(), ech.end(), [](const VecTemplate& a, const VecTemplate& b) {
        return a.begin()->first < b.begin()->first;
    });
    extra_ = std::move(ech);

    norm_level_ = std::max<long>(1, index_part_.feature_radius());
    for (const VecTemplate& t : extra_) norm_level_ = std::max(norm_level_, template_radius(t));
}

StableSubspace StableSubspace::zero(DomainKind domain) {
    return StableSubspace(IndexSet(domain));
}

StableSubspace StableSubspace::full(DomainKind domain) {
    return StableSubspace(IndexSet::all(domain));
}

bool StableSubspace::operator==(const StableSubspace& other) const {
    return index_part_ == other.index_part_ && extra_ == other.extra_;
}

// ---------------------------------------------------------------------------
// Truncation

DomainKind descriptor_domain(const LimitsDescriptor& d) {
    if (const auto* s = std::get_if<StableSubspace>(&d)) return s->domain();
    return std::get<SeqSubspace>(d).domain;
}

namespace {

void validate_seq(const SeqSubspace& d) {
    for (const VecTemplate& t : d.explicit_gens)
        for (const auto& [i, c] : t)
            if (!valid_index(d.domain, i))
                throw input_error("template index " + std::to_string(i) + " is not in the domain");
    for (const TemplateFamily& f : d.families) {
        if (!valid_index(d.domain, f.param.start))
            throw input_error("family parameter start is not in the domain");
        if (f.terms.empty()) throw input_error("family template has no terms");
        for (const auto& [off, c] : f.terms)
            if (sgn(c) == 0) throw input_error("family template has a zero coefficient");
    }
}

// Instance of the family at parameter k, or nullopt when any index leaves
// the domain or the level window.
std::optional<VecTemplate> family_instance(const TemplateFamily& f, DomainKind domain, long k,
                                           long level) {
    VecTemplate t;
    for (const auto& [off, c] : f.terms) {
        long i = k + off;
        if (!index_in_level(domain, i, level)) return std::nullopt;
        auto [it, fresh] = t.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) t.erase(it);
        }
    }
    if (t.empty()) return std::nullopt;
    return t;
}

// All family instances fully supported inside the level window.
std::vector<VecTemplate> family_instances_at(const TemplateFamily& f, DomainKind domain,
                                             long level) {
    long spread = 0;
    for (const auto& [off, c] : f.terms) spread = std::max(spread, std::labs(off));
    long lo, hi;
    if (f.param.dir == RayDir::up) {
        lo = f.param.start;
        hi = level + spread;
    } else {
        lo = -(level + spread);
        hi = f.param.start;
    }
    std::vector<VecTemplate> out;
    for (long k = lo; k <= hi; ++k) {
        if (domain == DomainKind::signed_indices && k == 0) continue;
        if (auto t = family_instance(f, domain, k, level)) out.push_back(std::move(*t));
    }
    return out;
}

// Generators of the descriptor supported within the level window, as dense
// window vectors.
std::vector<Vec> generators_within(const LimitsDescriptor& d, long level) {
    DomainKind dom = descriptor_domain(d);
    std::vector<Vec> rows;
    if (const auto* s = std::get_if<StableSubspace>(&d)) {
        for (long i : s->index_part().members_at(level))
            rows.push_back(template_dense(VecTemplate{{i, Rational(1)}}, dom, level));
        for (const VecTemplate& t : s->extra())
            if (template_radius(t) <= level) rows.push_back(template_dense(t, dom, level));
        return rows;
    }
    const SeqSubspace& q = std::get<SeqSubspace>(d);
    validate_seq(q);
    for (const VecTemplate& t : q.explicit_gens)
        if (template_radius(t) <= level) rows.push_back(template_dense(t, dom, level));
    for (const TemplateFamily& f : q.families)
        for (const VecTemplate& t : family_instances_at(f, dom, level))
            rows.push_back(template_dense(t, dom, level));
    return rows;
}

}  // namespace

long normalization_level(const SeqSubspace& d) {
    validate_seq(d);
    long r = 1;
    for (const VecTemplate& t : d.explicit_gens) r = std::max(r, template_radius(t));
    return r;
}

long normalization_level(const LimitsDescriptor& d) {
    if (const auto* s = std::get_if<StableSubspace>(&d)) return s->normalization_level();
    return normalization_level(std::get<SeqSubspace>(d));
}

Subspace truncate(const StableSubspace& d, long level) {
    if (level < d.normalization_level())
        throw input_error("truncation below the normalization level");
    return Subspace::span(generators_within(LimitsDescriptor(d), level),
                          level_dim(d.domain(), level));
}

Subspace truncate(const SeqSubspace& d, long level) {
    if (level < normalization_level(d))
        throw input_error("truncation below the normalization level");
    return Subspace::span(generators_within(LimitsDescriptor(d), level),
                          level_dim(d.domain, level));
}

Subspace truncate(const LimitsDescriptor& d, long level) {
    if (const auto* s = std::get_if<StableSubspace>(&d)) return truncate(*s, level);
    return truncate(std::get<SeqSubspace>(d), level);
}

Pairing level_pairing(PairingKind kind, DomainKind domain, long level) {
    switch (kind) {
        case PairingKind::standard_dual:
            return Pairing::standard_dual(level_dim(domain, level));
        case PairingKind::split_symmetric:
            if (domain != DomainKind::signed_indices)
                throw input_error("split pairings need the signed domain");
            return Pairing::split_symmetric(level_dim(domain, level));
        case PairingKind::split_symplectic:
            if (domain != DomainKind::signed_indices)
                throw input_error("split pairings need the signed domain");
            return Pairing::split_symplectic(level_dim(domain, level));
        case PairingKind::explicit_gram:
            break;
    }
    throw input_error("level pairings are the named kinds only");
}

Subspace restrict_level(const Subspace& s, DomainKind domain, long from_level, long to_level) {
    if (to_level > from_level) throw input_error("cannot restrict to a larger level");
    const std::size_t from_dim = level_dim(domain, from_level);
    const std::size_t to_dim = level_dim(domain, to_level);
    if (s.ambient_dim() != from_dim) throw input_error("subspace does not live at the from level");

    std::vector<std::size_t> window(to_dim);
    std::vector<Vec> units;
    units.reserve(to_dim);
    for (std::size_t j = 0; j < to_dim; ++j) {
        window[j] = index_position(domain, index_at_position(domain, j, to_level), from_level);
        Vec u(from_dim);
        u[window[j]] = 1;
        units.push_back(std::move(u));
    }
    Subspace inter = s.intersect(Subspace::span(units, from_dim));
    std::vector<Vec> rows;
    rows.reserve(inter.dim());
    for (std::size_t r = 0; r < inter.dim(); ++r) {
        const Vec& big = inter.basis_row(r);
        Vec small(to_dim);
        for (std::size_t j = 0; j < to_dim; ++j) small[j] = big[window[j]];
        rows.push_back(std::move(small));
    }
    return Subspace::span(rows, to_dim);
}

// ---------------------------------------------------------------------------
// Certified perp and closure

namespace {

// Right perp at the given level: constraints from generators supported
// within level + look, sampled at the window coordinates.
Subspace perp_window(const LimitsDescriptor& d, PairingKind kind, long level, long look) {
    DomainKind dom = descriptor_domain(d);
    const long m = level + look;
    const std::size_t win = level_dim(dom, level);
    Pairing p = level_pairing(kind, dom, m);
    const Matrix& g = p.gram();

    std::vector<std::size_t> embed(win);
    for (std::size_t j = 0; j < win; ++j)
        embed[j] = index_position(dom, index_at_position(dom, j, level), m);

    RrefAccumulator constraints(win);
    for (const Vec& gen : generators_within(d, m)) {
        // coefficient of y_t in <gen, y> is (G^T gen)[t]
        Vec crow(win);
        for (std::size_t j = 0; j < win; ++j) {
            Rational acc;
            const std::size_t t = embed[j];
            for (std::size_t r = 0; r < g.rows(); ++r)
                if (sgn(gen[r]) != 0 && sgn(g.at(r, t)) != 0) acc += gen[r] * g.at(r, t);
            crow[j] = acc;
        }
        constraints.insert(std::move(crow));
    }
    if (constraints.dim() == 0) return Subspace::full(win);
    return Subspace::span(Matrix::from_rows(constraints.rows()).kernel(), win);
}

// Left perp of the inner result, sampled back into the level window.
Subspace closure_window(const LimitsDescriptor& d, PairingKind kind, long level, long look) {
    DomainKind dom = descriptor_domain(d);
    const long m = level + look;
    const std::size_t win = level_dim(dom, level);
    Subspace inner = perp_window(d, kind, m, look);
    Pairing p = level_pairing(kind, dom, m);
    const Matrix& g = p.gram();

    std::vector<std::size_t> embed(win);
    for (std::size_t j = 0; j < win; ++j)
        embed[j] = index_position(dom, index_at_position(dom, j, level), m);

    RrefAccumulator constraints(win);
    for (std::size_t r = 0; r < inner.dim(); ++r) {
        const Vec& z = inner.basis_row(r);
        // coefficient of x_t in <x, z> is (G z)[t]
        Vec crow(win);
        for (std::size_t j = 0; j < win; ++j) {
            Rational acc;
            const std::size_t t = embed[j];
            for (std::size_t c = 0; c < g.cols(); ++c)
                if (sgn(g.at(t, c)) != 0 && sgn(z[c]) != 0) acc += g.at(t, c) * z[c];
            crow[j] = acc;
        }
        constraints.insert(std::move(crow));
    }
    if (constraints.dim() == 0) return Subspace::full(win);
    return Subspace::span(Matrix::from_rows(constraints.rows()).kernel(), win);
}

}  // namespace

CertifiedSubspace perp_certified(const LimitsDescriptor& d, PairingKind kind, long level,
                                 long lookahead) {
    if (lookahead < 0) throw input_error("lookahead must be nonnegative");
    Subspace now = perp_window(d, kind, level, lookahead);
    Subspace next = perp_window(d, kind, level, lookahead + 1);
    return CertifiedSubspace{now, Certificate{level, lookahead, now == next}};
}

CertifiedSubspace closure_certified(const LimitsDescriptor& d, PairingKind kind, long level,
                                    long lookahead) {
    if (lookahead < 0) throw input_error("lookahead must be nonnegative");
    Subspace now = closure_window(d, kind, level, lookahead);
    Subspace next = closure_window(d, kind, level, lookahead + 1);
    return CertifiedSubspace{now, Certificate{level, lookahead, now == next}};
}

// ---------------------------------------------------------------------------
// Chain families and descriptors

ChainFamily::ChainFamily(FamilyDir dir, StableSubspace base, Ray moving)
    : dir_(dir), base_(std::move(base)), moving_(moving) {
    if (!valid_index(base_.domain(), moving_.start))
        throw input_error("ray start " + std::to_string(moving_.start) + " is not in the domain");
    if (base_.domain() == DomainKind::positive && moving_.dir == RayDir::down)
        throw input_error("moving ray must be infinite in the domain");
    if (base_.index_part().intersects_ray(moving_))
        throw input_error("moving ray meets the base index set");
}

bool ChainFamily::operator==(const ChainFamily& other) const {
    return dir_ == other.dir_ && base_ == other.base_ && moving_ == other.moving_;
}

namespace {

long ray_advance(DomainKind dom, const Ray& r, long steps) {
    long i = r.start;
    for (long s = 0; s < steps; ++s)
        i = r.dir == RayDir::up ? next_index(dom, i) : prev_index(dom, i);
    return i;
}

long ray_count_in_window(DomainKind dom, const Ray& r, long level) {
    long count = 0;
    long i = r.start;
    while (index_in_level(dom, i, level)) {
        ++count;
        i = r.dir == RayDir::up ? next_index(dom, i) : prev_index(dom, i);
    }
    return count;
}

}  // namespace

StableSubspace family_member(const ChainFamily& fam, long t) {
    if (t < 1) throw input_error("family members are numbered from 1");
    const DomainKind dom = fam.base().domain();
    if (fam.dir() == FamilyDir::ascending) {
        std::vector<long> add;
        add.reserve(static_cast<std::size_t>(t));
        long i = fam.moving().start;
        for (long s = 0; s < t; ++s) {
            add.push_back(i);
            i = fam.moving().dir == RayDir::up ? next_index(dom, i) : prev_index(dom, i);
        }
        return StableSubspace(fam.base().index_part().union_with(IndexSet(dom, {}, add)),
                              fam.base().extra());
    }
    Ray tail{fam.moving().dir, ray_advance(dom, fam.moving(), t - 1)};
    return StableSubspace(fam.base().index_part().union_with(IndexSet(dom, {tail}, {})),
                          fam.base().extra());
}

StableSubspace family_limit(const ChainFamily& fam) {
    if (fam.dir() == FamilyDir::descending) return fam.base();
    return StableSubspace(
        fam.base().index_part().union_with(IndexSet(fam.base().domain(), {fam.moving()}, {})),
        fam.base().extra());
}

namespace {

StableSubspace block_lower(const ChainBlock& blk) {
    if (const auto* s = std::get_if<StableSubspace>(&blk)) return *s;
    const ChainFamily& f = std::get<ChainFamily>(blk);
    return f.dir() == FamilyDir::ascending ? family_member(f, 1) : family_limit(f);
}

StableSubspace block_upper(const ChainBlock& blk) {
    if (const auto* s = std::get_if<StableSubspace>(&blk)) return *s;
    const ChainFamily& f = std::get<ChainFamily>(blk);
    return f.dir() == FamilyDir::ascending ? family_limit(f) : family_member(f, 1);
}

long block_feature(const ChainBlock& blk) {
    if (const auto* s = std::get_if<StableSubspace>(&blk)) return s->normalization_level();
    const ChainFamily& f = std::get<ChainFamily>(blk);
    return std::max(f.base().normalization_level(), std::labs(f.moving().start));
}

}  // namespace

ChainDescriptor::ChainDescriptor(DomainKind domain, std::vector<ChainBlock> blocks)
    : domain_(domain), blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw input_error("chain needs at least one block");
    long radius = 1;
    for (const ChainBlock& blk : blocks_) {
        DomainKind bd = std::holds_alternative<StableSubspace>(blk)
                            ? std::get<StableSubspace>(blk).domain()
                            : std::get<ChainFamily>(blk).base().domain();
        if (bd != domain_) throw input_error("chain blocks disagree on the domain");
        radius = std::max(radius, block_feature(blk));
    }
    // Order is checked at a level beyond every featured index; by the ray
    // structure it then holds at every larger level too.
    feature_level_ = radius + 2;
    Subspace prev = truncate(block_lower(blocks_.front()), feature_level_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        Subspace lo = truncate(block_lower(blocks_[b]), feature_level_);
        if (!lo.contains(prev))
            throw input_error("chain blocks are not in ascending order (block " +
                              std::to_string(b) + ")");
        prev = truncate(block_upper(blocks_[b]), feature_level_);
    }
}

std::vector<Subspace> ChainDescriptor::members_at(long level) const {
    std::vector<Subspace> members;
    for (const ChainBlock& blk : blocks_) {
        if (const auto* s = std::get_if<StableSubspace>(&blk)) {
            members.push_back(truncate(*s, level));
            continue;
        }
        const ChainFamily& f = std::get<ChainFamily>(blk);
        long t_max = ray_count_in_window(domain_, f.moving(), level);
        for (long t = 1; t <= t_max; ++t) members.push_back(truncate(family_member(f, t), level));
        if (f.dir() == FamilyDir::descending) members.push_back(truncate(f.base(), level));
    }
    return Chain(members, level_dim(domain_, level)).members();
}

// ---------------------------------------------------------------------------
// fl at descriptor level

FlagDescriptor fl_stable(const ChainDescriptor& c) {
    const auto& blocks = c.blocks();
    if (!(block_lower(blocks.front()) == StableSubspace::zero(c.domain())))
        throw input_error("chain must start at the zero subspace");
    if (!(block_upper(blocks.back()) == StableSubspace::full(c.domain())))
        throw input_error("chain must end at the full space");

    FlagDescriptor out;
    out.domain = c.domain();
    StableSubspace prev = block_lower(blocks.front());
    for (const ChainBlock& blk : blocks) {
        StableSubspace lo = block_lower(blk);
        if (!(prev == lo)) {
            bool marker = lo.index_part().infinite_difference(prev.index_part());
            out.blocks.push_back(FlagPairBlock{prev, lo, marker});
        }
        if (const auto* f = std::get_if<ChainFamily>(&blk))
            out.blocks.push_back(FlagFamilyBlock{*f});
        prev = block_upper(blk);
    }
    return out;
}

namespace {

long flag_feature_level(const FlagDescriptor& fd) {
    long radius = 1;
    for (const FlagBlock& blk : fd.blocks) {
        if (const auto* p = std::get_if<FlagPairBlock>(&blk)) {
            radius = std::max({radius, p->pred.normalization_level(), p->succ.normalization_level()});
        } else {
            const ChainFamily& f = std::get<FlagFamilyBlock>(blk).family;
            radius = std::max({radius, f.base().normalization_level(), std::labs(f.moving().start)});
        }
    }
    return radius;
}

}  // namespace

GeneralizedFlag truncate_flag(const FlagDescriptor& fd, long level) {
    if (level < flag_feature_level(fd))
        throw input_error("truncation below the normalization level");
    std::vector<FlagPair> pairs;
    for (const FlagBlock& blk : fd.blocks) {
        if (const auto* pb = std::get_if<FlagPairBlock>(&blk)) {
            Subspace p = truncate(pb->pred, level);
            Subspace s = truncate(pb->succ, level);
            if (p != s) pairs.push_back(FlagPair{std::move(p), std::move(s), pb->inf_marker});
            continue;
        }
        const ChainFamily& f = std::get<FlagFamilyBlock>(blk).family;
        long t_max = ray_count_in_window(f.base().domain(), f.moving(), level);
        if (f.dir() == FamilyDir::ascending) {
            for (long t = 1; t < t_max; ++t)
                pairs.push_back(FlagPair{truncate(family_member(f, t), level),
                                         truncate(family_member(f, t + 1), level), false});
        } else {
            for (long t = t_max; t >= 1; --t) {
                Subspace pred = t == t_max ? truncate(f.base(), level)
                                           : truncate(family_member(f, t + 1), level);
                pairs.push_back(
                    FlagPair{std::move(pred), truncate(family_member(f, t), level), false});
            }
        }
    }
    return GeneralizedFlag(std::move(pairs), level_dim(fd.domain, level));
}

}  // namespace flagstab
