#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "flagstab/pairing.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab {

// Finite chain of pairwise distinct subspaces totally ordered by strict
// inclusion, kept sorted ascending. Duplicate inputs are merged.
class Chain {
public:
    Chain(std::vector<Subspace> members, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t size() const { return members_.size(); }
    const Subspace& member(std::size_t i) const { return members_[i]; }
    const std::vector<Subspace>& members() const { return members_; }

private:
    std::size_t ambient_dim_;
    std::vector<Subspace> members_;
};

struct FlagPair {
    Subspace pred;
    Subspace succ;
    // Marks a pair whose codimension is infinite at the descriptor level;
    // set by truncation, never by finite-level constructions.
    bool inf_marker = false;
};

// Generalized flag in its support (the last successor). At finite level the
// defining partition property (every nonzero vector of the support lies in
// exactly one succ \ pred) pins the shape down: the first predecessor is 0
// and consecutive pairs share their boundary subspace. The constructor
// enforces exactly that.
class GeneralizedFlag {
public:
    GeneralizedFlag(std::vector<FlagPair> pairs, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const FlagPair& pair(std::size_t i) const { return pairs_[i]; }
    const std::vector<FlagPair>& pairs() const { return pairs_; }

    // Union of all successors; the zero subspace for the empty flag.
    Subspace support() const;

    // Distinct members (all preds and succs), ascending.
    std::vector<Subspace> members() const;

    bool operator==(const GeneralizedFlag& other) const;
    bool operator!=(const GeneralizedFlag& other) const { return !(*this == other); }
    bool operator<(const GeneralizedFlag& other) const;

private:
    std::size_t ambient_dim_;
    std::vector<FlagPair> pairs_;
};

// fl(C): the generalized flag whose pairs are the consecutive member pairs
// of C. Requires 0 and the given top subspace to be members of C.
GeneralizedFlag fl_from_chain(const Chain& c, const Subspace& top);

// Index of the unique pair with x in succ \ pred. Rejects x = 0 and
// x outside the support.
std::size_t locate(const GeneralizedFlag& f, const Vec& x);

// G refines F (same ambient dimension and support): every member of F is a
// member of G.
bool is_refinement(const GeneralizedFlag& g, const GeneralizedFlag& f);

struct FlagReport {
    bool is_maximal = false;   // every pair unmarked with codimension 1
    bool is_closed = false;    // succs closed; preds closed or closure = succ
    bool is_bivalent = false;  // good pairs have codimension 1 or inf marker
    std::vector<std::size_t> good_pairs;  // indices of pairs with closed pred
};

FlagReport flag_report(const GeneralizedFlag& f, const Pairing& p);

// Longest prefix of pairs whose successor is isotropic. Needs a form.
GeneralizedFlag iso_part(const GeneralizedFlag& f, const Pairing& p);

// Twin of a maximal closed isotropic flag under a symmetric form: same
// pairs except the final successor, which is replaced by the other maximal
// isotropic extension of the shared final predecessor. nullopt when the
// support M has perp(M) != M (the odd situation: no twin).
std::optional<GeneralizedFlag> twin(const GeneralizedFlag& f, const Pairing& p);

// Certified closure of the predecessor of G's pair #index; lets truncated
// descriptors report the closure of the infinite-level object they came
// from rather than of the finite slice.
using PredClosureFn = std::function<Subspace(std::size_t index, const Subspace& pred)>;

// Borel-refinement check for truncation-marked flags: inside each
// inf-marked good pair of F, G must advance by codimension-1 steps whose
// predecessors all have (certified) closure equal to the pair's successor;
// everywhere else G must reproduce F's pairs verbatim. Without a callback
// the pairing closure at this level is used.
bool is_borel_refinement(const GeneralizedFlag& g, const GeneralizedFlag& f,
                         const Pairing& p, const PredClosureFn& certified_closure = {});

}  // namespace flagstab
