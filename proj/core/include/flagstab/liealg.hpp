#pragma once

#include <memory>
#include <string>
#include <vector>

#include "flagstab/flag.hpp"
#include "flagstab/matrix.hpp"
#include "flagstab/pairing.hpp"
#include "flagstab/subspace.hpp"

namespace flagstab {

enum class AmbientKind { gl, sl, so, sp, extension };

std::string ambient_kind_name(AmbientKind kind);

// A matrix Lie algebra acting on Q^n, held as a subspace of the n^2-dim
// matrix coordinate space (row-major flattening). gl/sl pair V with V_*
// through standard_dual; so/sp are cut out of gl by Z^T G + G Z = 0 for
// their (anti)symmetric gram G. Extensions adjoin finitely many matrices
// to a base ambient: [extra, base] must stay in base and extra brackets in
// the extended space. Cheap to copy (shared immutable payload).
class Ambient {
public:
    AmbientKind kind() const;
    std::size_t n() const;               // dimension of the space acted on
    const Pairing& form() const;
    const Subspace& space() const;       // subspace of Q^(n^2)
    const Ambient* base() const;         // extension only, else nullptr
    const std::vector<Matrix>& extra() const;

    // Largest dimension a solvable subalgebra can have, when known
    // (nondegenerate classical kinds); 0 means "no bound available".
    std::size_t solvable_dim_bound() const;

    bool operator==(const Ambient& other) const;

private:
    friend Ambient make_ambient(AmbientKind, std::size_t);
    friend Ambient make_ambient(AmbientKind, const Pairing&);
    friend Ambient extend_ambient(const Ambient&, std::vector<Matrix>);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

Ambient make_ambient(AmbientKind kind, std::size_t n);          // gl, sl
Ambient make_ambient(AmbientKind kind, const Pairing& form);    // so, sp
Ambient extend_ambient(const Ambient& base, std::vector<Matrix> extra);

// Subspace of an ambient closed under the bracket. The public constructor
// verifies both containment and closure on basis pairs.
class LieSubalgebra {
public:
    LieSubalgebra(Ambient ambient, Subspace space);

    const Ambient& ambient() const { return ambient_; }
    const Subspace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }

    Matrix basis_matrix(std::size_t i) const;
    std::vector<Matrix> basis_matrices() const;

    bool operator==(const LieSubalgebra& other) const;

    // Skips verification; for internal results whose closure is a theorem.
    static LieSubalgebra trusted(Ambient ambient, Subspace space);

private:
    struct trusted_tag {};
    LieSubalgebra(Ambient ambient, Subspace space, trusted_tag);
    Ambient ambient_;
    Subspace space_;
};

enum class TensorFlavor { otimes, wedge, amp };

// v (x) w acts by u -> <u, w> v; wedge and amp are the anti/symmetrized
// variants v(x)w -+ w(x)v landing in so resp. sp.
Matrix embed_tensor(const Vec& v, const Vec& w, const Pairing& p, TensorFlavor flavor);

enum class StabilizerMode { brute, formula };

// Subalgebra stabilizing every member of the flag. brute solves the linear
// conditions Z member <= member inside the ambient; formula builds
// sum_pairs succ (x) perp(pred) (wedge/amp for so/sp, which therefore need
// an isotropic flag). The two agree on maximal closed (isotropic) flags,
// and the acceptance suite leans on exactly that dual route.
LieSubalgebra stabilizer(const GeneralizedFlag& f, const Ambient& a, StabilizerMode mode);

// sum_pairs succ (x) perp(succ) and its wedge/amp analogues.
LieSubalgebra nilpotent_subalgebra(const GeneralizedFlag& f, const Ambient& a);

// One line pair per flag pair: L inside succ \ pred, M dual to it. The
// toral validity conditions are <l_g, m_c> nonzero exactly when g = c, plus
// <m_g, m_c> = 0 for so/sp.
struct LineSystem {
    struct Line {
        std::size_t pair_index;
        Vec l;
        Vec m;
    };
    std::vector<Line> lines;
};

// Canonical line system of a maximal flag: L_g spans the reduced first new
// basis vector of each pair, M_g solves the duality conditions (plus
// isotropy for so). Fails with computation_error when no rational choice
// exists.
LineSystem line_system_from_flag(const GeneralizedFlag& f, const Ambient& a);

LieSubalgebra toral_subalgebra(const LineSystem& ls, const Ambient& a);

// g >= [g,g] >= ... until stabilization; solvable iff the tail is 0.
std::vector<LieSubalgebra> derived_series(const LieSubalgebra& g);
bool is_solvable(const LieSubalgebra& g);

LieSubalgebra generated_subalgebra(const std::vector<Matrix>& generators, const Ambient& a);

// True iff no single complement basis vector of the ambient extends b to a
// solvable subalgebra. Uses the classical dimension bound of the ambient
// kind to cut extension searches short.
bool is_maximal_solvable(const LieSubalgebra& b);

LieSubalgebra normalizer(const LieSubalgebra& b, const Ambient& a);

// { Z u : Z in b } as a subspace of Q^n.
Subspace orbit(const LieSubalgebra& b, const Vec& u);

enum class ElementType { nilpotent, semisimple, mixed };
std::string element_type_name(ElementType t);

// Exact Jordan test: Z^n = 0 for nilpotent (the zero matrix counts as
// nilpotent), annihilation by the squarefree part of the characteristic
// polynomial for semisimple.
ElementType element_type(const Matrix& z);

// Maximal chain of b-stable subspaces from lo to hi built by repeated
// common-eigenvector extraction on hi/current. Needs b solvable and both
// bounds b-stable; fails with computation_error when an eigenvector step
// has no rational solution.
Chain stable_maximal_chain(const LieSubalgebra& b, const Subspace& lo, const Subspace& hi);

}  // namespace flagstab
