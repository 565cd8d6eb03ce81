#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flagstab/flag.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/pairing.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab {

// Index domains for countable bases: positive = 1,2,3,... and
// signed = ...,-2,-1,1,2,... (no zero). Level n is the finite window
// {1..n} resp. {-n..-1, 1..n}; window coordinates are stored in index
// order, matching the signed convention of the pairing module.
enum class DomainKind { positive, signed_indices };

std::string domain_kind_name(DomainKind d);
std::size_t level_dim(DomainKind d, long n);
bool valid_index(DomainKind d, long i);
bool index_in_level(DomainKind d, long i, long n);
std::size_t index_position(DomainKind d, long i, long n);
long index_at_position(DomainKind d, std::size_t pos, long n);
long next_index(DomainKind d, long i);
long prev_index(DomainKind d, long i);

enum class RayDir { down, up };

// Half-infinite index interval: down = {..., start-1, start},
// up = {start, start+1, ...}, intersected with the domain.
struct Ray {
    RayDir dir = RayDir::up;
    long start = 1;
    bool operator==(const Ray& other) const = default;
};

// Eventually-constant set of indices: at most one ray per direction plus
// finitely many singletons. Always kept canonical: no singleton inside or
// adjacent to a ray, rays merged, the full set represented uniquely.
// Positive-domain down-rays are finite and dissolve into singletons.
class IndexSet {
public:
    explicit IndexSet(DomainKind domain) : domain_(domain) {}
    IndexSet(DomainKind domain, std::vector<Ray> rays, std::vector<long> singles);
    static IndexSet all(DomainKind domain);

    DomainKind domain() const { return domain_; }
    bool empty() const { return !down_ && !up_ && singles_.empty(); }
    bool is_all() const;
    const std::optional<long>& down() const { return down_; }
    const std::optional<long>& up() const { return up_; }
    const std::set<long>& singles() const { return singles_; }

    bool contains(long i) const;
    bool subset_of(const IndexSet& other) const;
    bool intersects_ray(const Ray& r) const;
    // Indices covered within level n, in index order.
    std::vector<long> members_at(long n) const;
    // Assuming inner is a subset: does the difference contain a ray?
    bool infinite_difference(const IndexSet& inner) const;
    IndexSet union_with(const IndexSet& other) const;
    // Largest |index| featured by the set (singleton or ray start); 0 when
    // empty.
    long feature_radius() const;

    bool operator==(const IndexSet& other) const = default;
    bool operator!=(const IndexSet& other) const = default;

private:
    void normalize();

    DomainKind domain_;
    std::optional<long> down_;
    std::optional<long> up_;
    std::set<long> singles_;
};

// Finitely supported coordinate template, index -> coefficient.
using VecTemplate = std::map<long, Rational>;

// Subspace that is eventually index-aligned: the span of unit vectors over
// an IndexSet plus finitely many correction templates. Canonical form:
// extras have their index-part coordinates stripped, are kept in echelon
// form by smallest support index, and any single-index extra is absorbed
// into the index part. Equality of canonical forms is equality of the
// described subspaces at every level past the normalization level.
class StableSubspace {
public:
    explicit StableSubspace(IndexSet index_part, std::vector<VecTemplate> extra = {});
    static StableSubspace zero(DomainKind domain);
    static StableSubspace full(DomainKind domain);

    DomainKind domain() const { return index_part_.domain(); }
    const IndexSet& index_part() const { return index_part_; }
    const std::vector<VecTemplate>& extra() const { return extra_; }
    // Smallest level whose window exposes every feature of the descriptor;
    // truncation below it is not faithful and is rejected.
    long normalization_level() const { return norm_level_; }

    bool operator==(const StableSubspace& other) const;
    bool operator!=(const StableSubspace& other) const { return !(*this == other); }

private:
    IndexSet index_part_;
    std::vector<VecTemplate> extra_;
    long norm_level_ = 1;
};

// One-parameter generator template: for parameter value k in the ray,
// the vector sum coeff * e_{k + offset} over the terms. Instances whose
// indices leave the domain or the window are simply not present there.
struct TemplateFamily {
    Ray param;
    std::vector<std::pair<long, Rational>> terms;  // (offset, coefficient)
};

// Span of finitely many explicit templates and template families; unlike
// StableSubspace this can describe non-closed subspaces (dense
// hyperplanes), so perp and closure come with certificates.
struct SeqSubspace {
    DomainKind domain = DomainKind::positive;
    std::vector<VecTemplate> explicit_gens;
    std::vector<TemplateFamily> families;
};

using LimitsDescriptor = std::variant<StableSubspace, SeqSubspace>;

DomainKind descriptor_domain(const LimitsDescriptor& d);
long normalization_level(const SeqSubspace& d);
long normalization_level(const LimitsDescriptor& d);

// Exact span of all generators supported within the level window.
Subspace truncate(const StableSubspace& d, long level);
Subspace truncate(const SeqSubspace& d, long level);
Subspace truncate(const LimitsDescriptor& d, long level);

// The level-window pairing: standard_dual for either domain, split forms
// for the signed domain (the gram conventions extended index-wise).
Pairing level_pairing(PairingKind kind, DomainKind domain, long level);

// Intersection with the level-to window, re-coordinatized to that window.
Subspace restrict_level(const Subspace& s, DomainKind domain, long from_level, long to_level);

struct Certificate {
    long level = 0;
    long lookahead = 0;
    bool stable = false;
};

struct CertifiedSubspace {
    Subspace space;
    Certificate cert;
};

// {y in the level-n window : <g, y> = 0 for every generator supported
// within level n + L}. The certificate reports whether lookahead L+1
// changes the answer.
CertifiedSubspace perp_certified(const LimitsDescriptor& d, PairingKind kind, long level,
                                 long lookahead = 1);
// Double perp with the same lookahead discipline at both stages.
CertifiedSubspace closure_certified(const LimitsDescriptor& d, PairingKind kind, long level,
                                    long lookahead = 1);

enum class FamilyDir { ascending, descending };

// Infinite monotone family of StableSubspaces: ascending members grow from
// the base by consuming the moving ray one index at a time; descending
// members are the base plus ever-later tails of the moving ray. The moving
// ray must be infinite in the domain and disjoint from the base.
class ChainFamily {
public:
    ChainFamily(FamilyDir dir, StableSubspace base, Ray moving);

    FamilyDir dir() const { return dir_; }
    const StableSubspace& base() const { return base_; }
    const Ray& moving() const { return moving_; }

    bool operator==(const ChainFamily& other) const;

private:
    FamilyDir dir_;
    StableSubspace base_;
    Ray moving_;
};

// Member number t >= 1 (ascending: base plus the first t ray indices;
// descending: base plus the ray advanced t-1 steps).
StableSubspace family_member(const ChainFamily& fam, long t);
// Ascending: base plus the whole ray (the union). Descending: the base
// (the intersection).
StableSubspace family_limit(const ChainFamily& fam);

using ChainBlock = std::variant<StableSubspace, ChainFamily>;

// Totally ordered chain of subspace descriptors, given block by block in
// ascending order. Total order and the zero/full endpoints are validated
// by truncating at a level beyond every featured index.
class ChainDescriptor {
public:
    ChainDescriptor(DomainKind domain, std::vector<ChainBlock> blocks);

    DomainKind domain() const { return domain_; }
    const std::vector<ChainBlock>& blocks() const { return blocks_; }
    long feature_level() const { return feature_level_; }

    // Distinct truncated members at the level, ascending.
    std::vector<Subspace> members_at(long level) const;

private:
    DomainKind domain_;
    std::vector<ChainBlock> blocks_;
    long feature_level_ = 1;
};

// Flag descriptors: junction pairs between consecutive distinct chain
// members plus whole monotone families. A junction whose gap contains a
// ray carries the inf marker; truncation turns it into a FlagPair with
// inf_marker set.
struct FlagPairBlock {
    StableSubspace pred;
    StableSubspace succ;
    bool inf_marker = false;
};

struct FlagFamilyBlock {
    ChainFamily family;
};

using FlagBlock = std::variant<FlagPairBlock, FlagFamilyBlock>;

struct FlagDescriptor {
    DomainKind domain = DomainKind::signed_indices;
    std::vector<FlagBlock> blocks;
};

// fl of the chain: drops members that are unions/intersections of their
// neighbors inside a family and keeps exactly the covering pairs. The
// chain must start at the zero descriptor and end at the full one.
FlagDescriptor fl_stable(const ChainDescriptor& c);

// Finite flag at the level window; descriptor pairs whose distinction
// does not survive truncation are dropped, families unroll into their
// codimension-1 steps.
GeneralizedFlag truncate_flag(const FlagDescriptor& fd, long level);

// Prepared verification scenario: descriptors plus the per-level ambient
// construction they are checked in.
struct Scenario {
    std::string name;
    DomainKind domain = DomainKind::signed_indices;
    std::optional<ChainDescriptor> chain;
    std::optional<FlagDescriptor> flag;
    std::optional<SeqSubspace> seq;
    bool has_extension = false;
    // Template text of the extension element, for display and cross-checks.
    std::string template_source;
};

// Names: paper_example_1, paper_example_2, dense_hyperplane.
Scenario builtin(const std::string& name);

GeneralizedFlag scenario_flag(const Scenario& s, long level);
// The extension element instantiated in the level window.
Matrix scenario_extension_matrix(const Scenario& s, long level);
Ambient scenario_ambient(const Scenario& s, long level);

struct LevelOutcome {
    long level = 0;
    bool pass = false;
    std::string detail;  // witness description on failure, summary on pass
    std::optional<Certificate> certificate;
};

struct VerifyReport {
    std::string scenario;
    std::string check;
    long lookahead = 1;
    std::vector<LevelOutcome> levels;
    bool all_pass() const;
};

const std::vector<std::string>& registered_checks();

// Runs the named check at each level in [lo, hi]. Levels are independent
// and run in parallel when FLAGSTAB_THREADS allows; outcomes are collected
// in level order.
VerifyReport verify_levels(const Scenario& s, const std::string& check, long lo, long hi,
                           long lookahead = 1);

}  // namespace flagstab
