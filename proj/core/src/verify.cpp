#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "flagstab/enumerate.hpp"
#include "flagstab/errors.hpp"
#include "flagstab/limits.hpp"

namespace flagstab {

// ---------------------------------------------------------------------------
// Builtin scenarios

namespace {

ChainDescriptor builtin_chain() {
    const DomainKind dom = DomainKind::signed_indices;
    StableSubspace zero = StableSubspace::zero(dom);
    StableSubspace negatives(IndexSet(dom, {Ray{RayDir::down, -1}}, {}));
    ChainFamily lower(FamilyDir::descending, zero, Ray{RayDir::down, -1});
    ChainFamily upper(FamilyDir::ascending, negatives, Ray{RayDir::up, 1});
    return ChainDescriptor(dom, {ChainBlock{zero}, ChainBlock{lower}, ChainBlock{upper},
                                 ChainBlock{StableSubspace::full(dom)}});
}

}  // namespace

Scenario builtin(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "paper_example_1" || name == "paper_example_2") {
        s.domain = DomainKind::signed_indices;
        s.chain = builtin_chain();
        s.flag = fl_stable(*s.chain);
        if (name == "paper_example_2") {
            s.has_extension = true;
            s.template_source = "x(i) (x) (x*(i) + x*(-i)) for i >= 1";
        }
        return s;
    }
    if (name == "dense_hyperplane") {
        s.domain = DomainKind::positive;
        SeqSubspace seq;
        seq.domain = DomainKind::positive;
        seq.families.push_back(
            TemplateFamily{Ray{RayDir::up, 1}, {{0, Rational(1)}, {1, Rational(-1)}}});
        s.seq = std::move(seq);
        s.template_source = "e(k) - e(k+1) for k >= 1";
        return s;
    }
    throw input_error("unknown builtin scenario: " + name);
}

GeneralizedFlag scenario_flag(const Scenario& s, long level) {
    if (!s.flag) throw input_error("scenario has no flag");
    return truncate_flag(*s.flag, level);
}

Matrix scenario_extension_matrix(const Scenario& s, long level) {
    if (!s.has_extension) throw input_error("scenario has no extension element");
    const std::size_t dim = level_dim(s.domain, level);
    Pairing p = Pairing::standard_dual(dim);
    Matrix x(dim, dim);
    for (long i = 1; i <= level; ++i) {
        Vec w(dim);
        w[signed_position(i, dim)] = 1;
        w[signed_position(-i, dim)] = 1;
        x = x + embed_tensor(signed_unit(i, dim), w, p, TensorFlavor::otimes);
    }
    return x;
}

Ambient scenario_ambient(const Scenario& s, long level) {
    if (!s.flag) throw input_error("scenario has no ambient");
    Ambient base = make_ambient(AmbientKind::sl, level_dim(s.domain, level));
    if (!s.has_extension) return base;
    return extend_ambient(base, {scenario_extension_matrix(s, level)});
}

// ---------------------------------------------------------------------------
// Registered per-level checks

bool VerifyReport::all_pass() const {
    for (const LevelOutcome& o : levels)
        if (!o.pass) return false;
    return !levels.empty();
}

const std::vector<std::string>& registered_checks() {
    static const std::vector<std::string> names = {
        "stabilizer-is-borel", "normalizer-forces-a-zero", "twin-fiber",
        "injectivity",         "figure1-decomposition",    "orbit-table",
        "iso-part-stabilizer", "closure-is-full",
    };
    return names;
}

namespace {

LevelOutcome pass_outcome(long level, std::string detail) {
    return LevelOutcome{level, true, std::move(detail), std::nullopt};
}

LevelOutcome fail_outcome(long level, std::string detail) {
    return LevelOutcome{level, false, std::move(detail), std::nullopt};
}

LevelOutcome check_stabilizer_is_borel(const Scenario& s, long level) {
    GeneralizedFlag f = scenario_flag(s, level);
    Ambient a = scenario_ambient(s, level);
    LieSubalgebra b = stabilizer(f, a, StabilizerMode::brute);
    if (a.kind() != AmbientKind::extension) {
        LieSubalgebra bf = stabilizer(f, a, StabilizerMode::formula);
        if (!(bf.space() == b.space()))
            return fail_outcome(level, "stabilizer modes disagree (brute dim " +
                                           std::to_string(b.dim()) + ", formula dim " +
                                           std::to_string(bf.dim()) + ")");
    }
    if (!is_solvable(b)) return fail_outcome(level, "stabilizer is not solvable");
    if (!is_maximal_solvable(b)) return fail_outcome(level, "stabilizer is not maximal solvable");
    return pass_outcome(level, "borel of dim " + std::to_string(b.dim()));
}

LevelOutcome check_normalizer_forces_a_zero(const Scenario& s, long level) {
    if (!s.has_extension) throw input_error("check needs an extension scenario");
    const long m = level + 2;  // the diagonal witness uses indices level+1, level+2
    const std::size_t dim = level_dim(s.domain, m);
    Pairing p = Pairing::standard_dual(dim);

    GeneralizedFlag f = scenario_flag(s, m);
    Ambient base = make_ambient(AmbientKind::sl, dim);
    LieSubalgebra b = stabilizer(f, base, StabilizerMode::formula);

    auto unit_tensor = [&](long row, long col) {
        return embed_tensor(signed_unit(row, dim), signed_unit(col, dim), p,
                            TensorFlavor::otimes);
    };
    Matrix z = unit_tensor(level + 1, level + 1) + unit_tensor(level + 2, level + 2).scaled(-1);
    if (!b.space().contains(flatten(z)))
        return fail_outcome(level, "diagonal witness is not in the stabilizer");

    Matrix x = scenario_extension_matrix(s, m);
    Matrix expected =
        unit_tensor(level + 1, -(level + 1)).scaled(-1) + unit_tensor(level + 2, -(level + 2));
    if (!(bracket(x, z) == expected))
        return fail_outcome(level, "bracket of the extension element is not the expected tensor");
    if (b.space().contains(flatten(expected)))
        return fail_outcome(level, "bracket image unexpectedly lies in the stabilizer");

    Ambient ext = scenario_ambient(s, m);
    LieSubalgebra nb = normalizer(b, ext);

    // The adjoined element has nonzero trace on every window, so base and
    // extension together span all of gl there and literal self-normalization
    // cannot survive truncation. Its two exact finite shadows: the
    // normalizer meets the traceless part in the stabilizer alone, and a
    // normalizer element whose traceless part is supported in the inner
    // level window must have extension coefficient 0.
    Subspace back = nb.space().intersect(base.space());
    if (!(back == b.space()))
        return fail_outcome(level, "normalizer meets the traceless part beyond the stabilizer "
                                   "(dim " +
                                       std::to_string(back.dim()) + " vs " +
                                       std::to_string(b.dim()) + ")");

    std::vector<long> inner;
    for (long i = -level; i <= level; ++i)
        if (i != 0) inner.push_back(i);
    RrefAccumulator gn_rows(dim * dim);
    for (long a : inner)
        for (long c : inner)
            if (a != c) gn_rows.insert(flatten(unit_tensor(a, c)));
    for (std::size_t t = 0; t + 1 < inner.size(); ++t)
        gn_rows.insert(flatten(unit_tensor(inner[t], inner[t]) +
                               unit_tensor(inner[t + 1], inner[t + 1]).scaled(-1)));
    Subspace gn = gn_rows.to_subspace();
    Subspace adjoined = gn.sum(Subspace::span(std::vector<Vec>{flatten(x)}, dim * dim));
    Subspace forced = nb.space().intersect(adjoined);
    if (!(forced == b.space().intersect(gn)))
        return fail_outcome(level,
                            "a normalizer element supported in the inner window keeps a nonzero "
                            "extension coefficient");
    return pass_outcome(level, "extension coefficient forced to 0; normalizer meets sl in the "
                               "stabilizer (dim " +
                                   std::to_string(b.dim()) + ")");
}

LevelOutcome check_closure_is_full(const Scenario& s, long level, long lookahead) {
    if (!s.seq) throw input_error("check needs a sequence-descriptor scenario");
    CertifiedSubspace res =
        closure_certified(LimitsDescriptor(*s.seq), PairingKind::standard_dual, level, lookahead);
    LevelOutcome out;
    out.level = level;
    out.certificate = res.cert;
    if (!res.space.is_full()) {
        out.pass = false;
        out.detail = "closure has dim " + std::to_string(res.space.dim()) + " of " +
                     std::to_string(res.space.ambient_dim());
        return out;
    }
    if (!res.cert.stable) {
        out.pass = false;
        out.detail = "closure certificate is not stable";
        return out;
    }
    out.pass = true;
    out.detail = "closure is the full space";
    return out;
}

LevelOutcome check_twin_fiber(const Scenario&, long level) {
    std::string summary;
    for (std::size_t dim : {2 * static_cast<std::size_t>(level),
                            2 * static_cast<std::size_t>(level) + 1}) {
        const bool even = dim % 2 == 0;
        Pairing p = Pairing::split_symmetric(dim);
        Ambient a = make_ambient(AmbientKind::so, p);
        std::vector<GeneralizedFlag> flags = basis_aligned_isotropic_flags(p);
        std::map<Subspace, std::vector<std::size_t>> fibers;
        for (std::size_t i = 0; i < flags.size(); ++i)
            fibers[stabilizer(flags[i], a, StabilizerMode::formula).space()].push_back(i);
        for (const auto& [space, members] : fibers) {
            if (even) {
                if (members.size() != 2)
                    return fail_outcome(level, "so(" + std::to_string(dim) + ") fiber of size " +
                                                   std::to_string(members.size()));
                std::optional<GeneralizedFlag> tw = twin(flags[members[0]], p);
                if (!tw)
                    return fail_outcome(level,
                                        "so(" + std::to_string(dim) + ") flag has no twin");
                if (!(*tw == flags[members[1]]))
                    return fail_outcome(level, "so(" + std::to_string(dim) +
                                                   ") fiber is not a twin pair");
            } else {
                if (members.size() != 1)
                    return fail_outcome(level, "so(" + std::to_string(dim) + ") fiber of size " +
                                                   std::to_string(members.size()));
                if (twin(flags[members[0]], p))
                    return fail_outcome(level, "so(" + std::to_string(dim) +
                                                   ") flag unexpectedly has a twin");
            }
        }
        if (!summary.empty()) summary += ", ";
        summary += "so(" + std::to_string(dim) + "): " + std::to_string(fibers.size()) +
                   " fibers from " + std::to_string(flags.size()) + " flags";
    }
    return pass_outcome(level, summary);
}

LevelOutcome check_injectivity(const Scenario&, long level) {
    std::vector<GeneralizedFlag> flags = coordinate_maximal_flags(level);
    Ambient a = make_ambient(AmbientKind::sl, level);
    std::set<Subspace> distinct;
    for (const GeneralizedFlag& f : flags)
        distinct.insert(stabilizer(f, a, StabilizerMode::formula).space());
    if (distinct.size() != flags.size())
        return fail_outcome(level, std::to_string(distinct.size()) +
                                       " distinct stabilizers among " +
                                       std::to_string(flags.size()) + " flags");
    return pass_outcome(level, std::to_string(flags.size()) + " flags, all stabilizers distinct");
}

struct CanonicalCase {
    std::string label;
    GeneralizedFlag flag;
    Ambient ambient;
};

// One flag of each classical kind at the level: the identity coordinate
// flag for gl/sl, the all-positive basis-aligned isotropic flag for so/sp.
std::vector<CanonicalCase> canonical_cases(long level) {
    std::vector<CanonicalCase> cases;
    const std::size_t n = static_cast<std::size_t>(level);
    GeneralizedFlag coord = coordinate_maximal_flags(n).front();
    cases.push_back({"gl(" + std::to_string(n) + ")", coord, make_ambient(AmbientKind::gl, n)});
    cases.push_back({"sl(" + std::to_string(n) + ")", coord, make_ambient(AmbientKind::sl, n)});
    for (std::size_t dim : {2 * n, 2 * n + 1}) {
        Pairing p = Pairing::split_symmetric(dim);
        cases.push_back({"so(" + std::to_string(dim) + ")",
                         basis_aligned_isotropic_flags(p).front(),
                         make_ambient(AmbientKind::so, p)});
    }
    Pairing sp = Pairing::split_symplectic(2 * n);
    cases.push_back({"sp(" + std::to_string(2 * n) + ")",
                     basis_aligned_isotropic_flags(sp).front(),
                     make_ambient(AmbientKind::sp, sp)});
    return cases;
}

LevelOutcome check_figure1(const Scenario&, long level) {
    for (const CanonicalCase& c : canonical_cases(level)) {
        LieSubalgebra b = stabilizer(c.flag, c.ambient, StabilizerMode::brute);
        LineSystem ls = line_system_from_flag(c.flag, c.ambient);
        LieSubalgebra t = toral_subalgebra(ls, c.ambient);
        LieSubalgebra nil = nilpotent_subalgebra(c.flag, c.ambient);
        if (!(t.space().sum(nil.space()) == b.space()))
            return fail_outcome(level, c.label + ": toral + nilpotent does not span b");
        if (t.space().intersect(nil.space()).dim() != 0)
            return fail_outcome(level, c.label + ": toral and nilpotent parts overlap");
        if (b.dim() != t.dim() + nil.dim())
            return fail_outcome(level, c.label + ": dim mismatch in the decomposition");
        for (const Matrix& h : t.basis_matrices())
            if (element_type(h) != ElementType::semisimple)
                return fail_outcome(level, c.label + ": toral basis element is not semisimple");
        for (const Matrix& e : nil.basis_matrices())
            if (element_type(e) != ElementType::nilpotent)
                return fail_outcome(level, c.label + ": nilpotent basis element is not nilpotent");
    }
    return pass_outcome(level, "b = t (+) n for gl, sl, so even, so odd, sp");
}

LevelOutcome check_orbit_table(const Scenario&, long level) {
    for (const CanonicalCase& c : canonical_cases(level)) {
        LieSubalgebra b = stabilizer(c.flag, c.ambient, StabilizerMode::brute);
        Subspace support = c.flag.support();
        const std::size_t dim = c.flag.ambient_dim();
        for (std::size_t pos = 0; pos < dim; ++pos) {
            Vec u(dim);
            u[pos] = 1;
            if (!support.contains(u)) continue;
            Subspace expected = c.flag.pair(locate(c.flag, u)).succ;
            // The one-dimensional sl ambient acts by zero.
            if (c.ambient.kind() == AmbientKind::sl && dim == 1)
                expected = Subspace::span(std::vector<Vec>{}, dim);
            if (!(orbit(b, u) == expected))
                return fail_outcome(level, c.label + ": orbit of basis vector " +
                                               std::to_string(pos) + " is off the case table");
        }
    }
    return pass_outcome(level, "orbits match the case table for all support basis vectors");
}

LevelOutcome check_iso_part_stabilizer(const Scenario&, long level) {
    std::string summary;
    for (std::size_t dim : {2 * static_cast<std::size_t>(level),
                            2 * static_cast<std::size_t>(level) + 1}) {
        Pairing p = Pairing::split_symmetric(dim);
        Ambient a = make_ambient(AmbientKind::so, p);
        std::vector<GeneralizedFlag> flags = basis_aligned_isotropic_flags(p);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            GeneralizedFlag full = extend_isotropic_to_compatible(flags[i], p);
            if (!(iso_part(full, p) == flags[i]))
                return fail_outcome(level, "so(" + std::to_string(dim) + ") flag " +
                                               std::to_string(i) +
                                               ": iso part does not recover the flag");
            LieSubalgebra st_iso = stabilizer(flags[i], a, StabilizerMode::brute);
            LieSubalgebra st_full = stabilizer(full, a, StabilizerMode::brute);
            if (!(st_iso.space() == st_full.space()))
                return fail_outcome(level, "so(" + std::to_string(dim) + ") flag " +
                                               std::to_string(i) +
                                               ": stabilizer changed under completion");
        }
        if (!summary.empty()) summary += ", ";
        summary += "so(" + std::to_string(dim) + "): " + std::to_string(flags.size()) + " flags";
    }
    return pass_outcome(level, summary);
}

unsigned thread_cap() {
    const char* env = std::getenv("FLAGSTAB_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw input_error("FLAGSTAB_THREADS must be a positive integer");
    return static_cast<unsigned>(std::min<long>(v, 64));
}

}  // namespace

VerifyReport verify_levels(const Scenario& s, const std::string& check, long lo, long hi,
                           long lookahead) {
    if (lo < 1) throw input_error("levels start at 1");
    if (hi < lo) throw input_error("level range is empty");
    if (lookahead < 0) throw input_error("lookahead must be nonnegative");
    const auto& names = registered_checks();
    if (std::find(names.begin(), names.end(), check) == names.end())
        throw input_error("unknown check: " + check);

    std::function<LevelOutcome(long)> run;
    if (check == "stabilizer-is-borel")
        run = [&](long n) { return check_stabilizer_is_borel(s, n); };
    else if (check == "normalizer-forces-a-zero")
        run = [&](long n) { return check_normalizer_forces_a_zero(s, n); };
    else if (check == "closure-is-full")
        run = [&](long n) { return check_closure_is_full(s, n, lookahead); };
    else if (check == "twin-fiber")
        run = [&](long n) { return check_twin_fiber(s, n); };
    else if (check == "injectivity")
        run = [&](long n) { return check_injectivity(s, n); };
    else if (check == "figure1-decomposition")
        run = [&](long n) { return check_figure1(s, n); };
    else if (check == "orbit-table")
        run = [&](long n) { return check_orbit_table(s, n); };
    else
        run = [&](long n) { return check_iso_part_stabilizer(s, n); };

    VerifyReport report;
    report.scenario = s.name;
    report.check = check;
    report.lookahead = lookahead;

    const long count = hi - lo + 1;
    std::vector<LevelOutcome> outcomes(static_cast<std::size_t>(count));
    const unsigned workers =
        std::min<unsigned>(thread_cap(), static_cast<unsigned>(std::min<long>(count, 64)));
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) outcomes[static_cast<std::size_t>(i)] = run(lo + i);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    try {
                        outcomes[static_cast<std::size_t>(i)] = run(lo + i);
                    } catch (...) {
                        errors[static_cast<std::size_t>(i)] = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }
    report.levels = std::move(outcomes);
    return report;
}

}  // namespace flagstab
