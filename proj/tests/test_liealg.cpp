#include <doctest.h>

#include <vector>

#include "flagstab/enumerate.hpp"
#include "flagstab/errors.hpp"
#include "flagstab/flag.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/matrix.hpp"
#include "flagstab/pairing.hpp"
#include "flagstab/subspace.hpp"

using namespace flagstab;

namespace {

Matrix ambient_basis_matrix(const Ambient& a, std::size_t i) {
    return unflatten(a.space().basis_row(i), a.n());
}

// Z respects the form: Z^T G + G Z = 0.
bool in_form_algebra(const Matrix& z, const Pairing& p) {
    Matrix lhs = z.transposed() * p.gram() + p.gram() * z;
    return lhs.is_zero();
}

bool stabilizes(const LieSubalgebra& g, const GeneralizedFlag& f) {
    for (const Matrix& z : g.basis_matrices())
        for (const Subspace& m : f.members())
            for (std::size_t r = 0; r < m.dim(); ++r)
                if (!m.contains(z.apply(m.basis_row(r)))) return false;
    return true;
}

GeneralizedFlag coordinate_flag(std::size_t n) { return coordinate_maximal_flags(n).front(); }

Matrix unit_matrix(std::size_t r, std::size_t c, std::size_t n) {
    Matrix m(n, n);
    m.at(r, c) = 1;
    return m;
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("ambient dimensions of the classical kinds") {
    CHECK(make_ambient(AmbientKind::gl, 3).space().dim() == 9);
    CHECK(make_ambient(AmbientKind::sl, 3).space().dim() == 8);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(4)).space().dim() == 6);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(5)).space().dim() == 10);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(6)).space().dim() == 15);
    CHECK(make_ambient(AmbientKind::sp, Pairing::split_symplectic(4)).space().dim() == 10);
    CHECK(make_ambient(AmbientKind::sp, Pairing::split_symplectic(6)).space().dim() == 21);
    CHECK(make_ambient(AmbientKind::gl, 3).n() == 3);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(4)).n() == 4);
}

TEST_CASE("solvable dimension bounds match the Borel dimensions") {
    CHECK(make_ambient(AmbientKind::gl, 3).solvable_dim_bound() == 6);
    CHECK(make_ambient(AmbientKind::sl, 3).solvable_dim_bound() == 5);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(4)).solvable_dim_bound() == 4);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(5)).solvable_dim_bound() == 6);
    CHECK(make_ambient(AmbientKind::so, Pairing::split_symmetric(6)).solvable_dim_bound() == 9);
    CHECK(make_ambient(AmbientKind::sp, Pairing::split_symplectic(4)).solvable_dim_bound() == 6);
    CHECK(make_ambient(AmbientKind::sp, Pairing::split_symplectic(6)).solvable_dim_bound() ==
          12);
}

TEST_CASE("so and sp consist of form-respecting matrices") {
    for (std::size_t dim : {4, 5, 6}) {
        Ambient so = make_ambient(AmbientKind::so, Pairing::split_symmetric(dim));
        for (std::size_t i = 0; i < so.space().dim(); ++i)
            CHECK(in_form_algebra(ambient_basis_matrix(so, i), so.form()));
    }
    Ambient sp = make_ambient(AmbientKind::sp, Pairing::split_symplectic(4));
    for (std::size_t i = 0; i < sp.space().dim(); ++i)
        CHECK(in_form_algebra(ambient_basis_matrix(sp, i), sp.form()));
    // sl matrices are traceless.
    Ambient sl = make_ambient(AmbientKind::sl, 4);
    for (std::size_t i = 0; i < sl.space().dim(); ++i)
        CHECK(is_zero(ambient_basis_matrix(sl, i).trace()));
}

TEST_CASE("ambient construction rejects mismatched forms") {
    CHECK_THROWS_AS(make_ambient(AmbientKind::so, Pairing::split_symplectic(4)), input_error);
    CHECK_THROWS_AS(make_ambient(AmbientKind::sp, Pairing::split_symmetric(4)), input_error);
    CHECK_THROWS_AS(make_ambient(AmbientKind::gl, Pairing::split_symmetric(4)), input_error);
    CHECK_THROWS_AS(make_ambient(AmbientKind::so, 4), input_error);
}

TEST_CASE("extensions adjoin matrices whose bracket stays in the base") {
    Ambient sl2 = make_ambient(AmbientKind::sl, 2);
    Matrix id{{1, 0}, {0, 1}};
    Ambient ext = extend_ambient(sl2, {id});
    CHECK(ext.kind() == AmbientKind::extension);
    CHECK(ext.space().dim() == 4);
    CHECK(ext.base() != nullptr);
    CHECK(*ext.base() == sl2);
    REQUIRE(ext.extra().size() == 1);
    CHECK(ext.extra()[0] == id);
    // A matrix already inside the base is not a new direction.
    CHECK_THROWS_AS(extend_ambient(sl2, {Matrix{{0, 1}, {0, 0}}}), input_error);
    // so(4) is not stable under bracketing with E_{11}.
    Ambient so4 = make_ambient(AmbientKind::so, Pairing::split_symmetric(4));
    CHECK_THROWS_AS(extend_ambient(so4, {unit_matrix(0, 0, 4)}), input_error);
}

TEST_CASE("subalgebra constructor verifies bracket closure") {
    Ambient gl2 = make_ambient(AmbientKind::gl, 2);
    std::vector<Vec> upper = {flatten(unit_matrix(0, 0, 2)), flatten(unit_matrix(0, 1, 2)),
                              flatten(unit_matrix(1, 1, 2))};
    CHECK_NOTHROW(LieSubalgebra(gl2, Subspace::span(upper, 4)));
    // span{E_12, E_21} brackets to the diagonal: not closed.
    std::vector<Vec> open_pair = {flatten(unit_matrix(0, 1, 2)), flatten(unit_matrix(1, 0, 2))};
    CHECK_THROWS_AS(LieSubalgebra(gl2, Subspace::span(open_pair, 4)), input_error);
    // Containment in the ambient is enforced.
    Ambient sl2 = make_ambient(AmbientKind::sl, 2);
    std::vector<Vec> with_trace = {flatten(unit_matrix(0, 0, 2))};
    CHECK_THROWS_AS(LieSubalgebra(sl2, Subspace::span(with_trace, 4)), input_error);
}

TEST_CASE("otimes embeds the rank-one action u -> <u, w> v") {
    Pairing dual = Pairing::standard_dual(3);
    Vec v{Rational(1), Rational(2), Rational(0)};
    Vec w{Rational(0), Rational(1), Rational(-1)};
    Matrix z = embed_tensor(v, w, dual, TensorFlavor::otimes);
    Vec u{Rational(3), Rational(1), Rational(1)};
    Vec expect(3);
    Rational scale = dual.pair(u, w);
    for (std::size_t i = 0; i < 3; ++i) expect[i] = scale * v[i];
    CHECK(z.apply(u) == expect);
}

TEST_CASE("wedge lands in so and amp lands in sp") {
    Pairing so4 = Pairing::split_symmetric(4);
    Pairing sp4 = Pairing::split_symplectic(4);
    for (long i : {-2L, -1L, 1L, 2L})
        for (long j : {-2L, -1L, 1L, 2L}) {
            Matrix w = embed_tensor(signed_unit(i, 4), signed_unit(j, 4), so4,
                                    TensorFlavor::wedge);
            CHECK(in_form_algebra(w, so4));
            Matrix a = embed_tensor(signed_unit(i, 4), signed_unit(j, 4), sp4,
                                    TensorFlavor::amp);
            CHECK(in_form_algebra(a, sp4));
        }
    // wedge(v, v) degenerates to zero; amp(v, v) does not.
    Vec e1 = signed_unit(1, 4);
    CHECK(embed_tensor(e1, e1, so4, TensorFlavor::wedge).is_zero());
    CHECK(!embed_tensor(e1, e1, sp4, TensorFlavor::amp).is_zero());
}

TEST_CASE("amp of a basis vector with itself doubles against its pair partner") {
    Pairing sp4 = Pairing::split_symplectic(4);
    Vec e1 = signed_unit(1, 4);
    Matrix a = embed_tensor(e1, e1, sp4, TensorFlavor::amp);
    Vec image = a.apply(signed_unit(-1, 4));
    Vec expect(4);
    expect[signed_position(1, 4)] = -2;
    CHECK(image == expect);
}

TEST_CASE("stabilizer routes agree on coordinate flags") {
    for (std::size_t n : {2, 3, 4}) {
        Ambient gl = make_ambient(AmbientKind::gl, n);
        Ambient sl = make_ambient(AmbientKind::sl, n);
        GeneralizedFlag f = coordinate_flag(n);
        LieSubalgebra brute = stabilizer(f, gl, StabilizerMode::brute);
        LieSubalgebra formula = stabilizer(f, gl, StabilizerMode::formula);
        CHECK(brute == formula);
        CHECK(brute.dim() == n * (n + 1) / 2);
        CHECK(stabilizes(brute, f));
        LieSubalgebra sl_brute = stabilizer(f, sl, StabilizerMode::brute);
        LieSubalgebra sl_formula = stabilizer(f, sl, StabilizerMode::formula);
        CHECK(sl_brute == sl_formula);
        CHECK(sl_brute.dim() == n * (n + 1) / 2 - 1);
    }
}

TEST_CASE("stabilizer dimensions for the split form kinds") {
    // Form-kind stabilizers take the maximal isotropic flag itself; its
    // perp members are stabilized for free.
    auto borel_dim = [](AmbientKind kind, const Pairing& p) {
        Ambient a = make_ambient(kind, p);
        GeneralizedFlag iso = basis_aligned_isotropic_flags(p).front();
        LieSubalgebra brute = stabilizer(iso, a, StabilizerMode::brute);
        LieSubalgebra formula = stabilizer(iso, a, StabilizerMode::formula);
        CHECK(brute == formula);
        CHECK(stabilizes(brute, iso));
        CHECK(stabilizes(brute, extend_isotropic_to_compatible(iso, p)));
        return brute.dim();
    };
    CHECK(borel_dim(AmbientKind::so, Pairing::split_symmetric(4)) == 4);
    CHECK(borel_dim(AmbientKind::so, Pairing::split_symmetric(5)) == 6);
    CHECK(borel_dim(AmbientKind::so, Pairing::split_symmetric(6)) == 9);
    CHECK(borel_dim(AmbientKind::sp, Pairing::split_symplectic(4)) == 6);
    CHECK(borel_dim(AmbientKind::sp, Pairing::split_symplectic(6)) == 12);
}

TEST_CASE("formula stabilizer for forms requires an isotropic flag") {
    Pairing p = Pairing::split_symmetric(4);
    Ambient so4 = make_ambient(AmbientKind::so, p);
    // The mixed plane span{e_1, e_-1} is not isotropic.
    Subspace bad = Subspace::span({signed_unit(1, 4), signed_unit(-1, 4)}, 4);
    GeneralizedFlag f({{Subspace(4), bad, false}}, 4);
    CHECK_THROWS_AS(stabilizer(f, so4, StabilizerMode::formula), precondition_error);
}

TEST_CASE("nilpotent part of the coordinate Borel is strictly upper triangular") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra n = nilpotent_subalgebra(f, gl3);
    CHECK(n.dim() == 3);
    for (const Matrix& z : n.basis_matrices()) {
        CHECK(element_type(z) == ElementType::nilpotent);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c <= r; ++c) CHECK(is_zero(z.at(r, c)));
    }
}

TEST_CASE("line system of the coordinate flag is the dual basis pair") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LineSystem ls = line_system_from_flag(f, gl3);
    REQUIRE(ls.lines.size() == 3);
    for (std::size_t g = 0; g < 3; ++g) {
        CHECK(ls.lines[g].pair_index == g);
        for (std::size_t c = 0; c < 3; ++c) {
            Rational val = gl3.form().pair(ls.lines[g].l, ls.lines[c].m);
            CHECK(is_zero(val) == (g != c));
        }
    }
}

TEST_CASE("line systems of form kinds keep the m side isotropic") {
    for (auto [kind, p] : {std::pair{AmbientKind::so, Pairing::split_symmetric(5)},
                           std::pair{AmbientKind::sp, Pairing::split_symplectic(4)}}) {
        Ambient a = make_ambient(kind, p);
        GeneralizedFlag f = basis_aligned_isotropic_flags(p).front();
        LineSystem ls = line_system_from_flag(f, a);
        REQUIRE(ls.lines.size() == f.size());
        for (std::size_t g = 0; g < ls.lines.size(); ++g)
            for (std::size_t c = 0; c < ls.lines.size(); ++c) {
                Rational lm = p.pair(ls.lines[g].l, ls.lines[c].m);
                CHECK(is_zero(lm) == (g != c));
            }
    }
}

TEST_CASE("toral and nilpotent parts decompose the stabilizer") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra b = stabilizer(f, gl3, StabilizerMode::formula);
    LieSubalgebra t = toral_subalgebra(line_system_from_flag(f, gl3), gl3);
    LieSubalgebra n = nilpotent_subalgebra(f, gl3);
    CHECK(t.dim() == 3);
    CHECK(t.space().sum(n.space()) == b.space());
    CHECK(t.space().intersect(n.space()).is_zero());
    for (const Matrix& z : t.basis_matrices())
        CHECK(element_type(z) == ElementType::semisimple);
}

TEST_CASE("derived series descends to zero exactly for solvable algebras") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra b = stabilizer(f, gl3, StabilizerMode::brute);
    std::vector<LieSubalgebra> series = derived_series(b);
    REQUIRE(series.size() >= 2);
    CHECK(series.front().space() == b.space());
    CHECK(series.back().dim() == 0);
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        CHECK(series[i].space().contains(series[i + 1].space()));
    CHECK(is_solvable(b));

    Ambient sl2 = make_ambient(AmbientKind::sl, 2);
    LieSubalgebra all = LieSubalgebra::trusted(sl2, sl2.space());
    std::vector<LieSubalgebra> stuck = derived_series(all);
    CHECK(stuck.back().dim() == 3);
    CHECK(!is_solvable(all));
}

TEST_CASE("generated subalgebra closes the bracket hull") {
    Ambient sl2 = make_ambient(AmbientKind::sl, 2);
    Matrix e = unit_matrix(0, 1, 2);
    Matrix fmat = unit_matrix(1, 0, 2);
    LieSubalgebra g = generated_subalgebra({e, fmat}, sl2);
    CHECK(g.dim() == 3);
    CHECK(g.space() == sl2.space());
    LieSubalgebra just_e = generated_subalgebra({e}, sl2);
    CHECK(just_e.dim() == 1);
}

TEST_CASE("maximal solvability of Borels and failure for proper subalgebras") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra b = stabilizer(f, gl3, StabilizerMode::brute);
    CHECK(is_maximal_solvable(b));
    // The diagonal extends inside b: not maximal.
    std::vector<Vec> diag = {flatten(unit_matrix(0, 0, 3)), flatten(unit_matrix(1, 1, 3)),
                             flatten(unit_matrix(2, 2, 3))};
    LieSubalgebra t(gl3, Subspace::span(diag, 9));
    CHECK(!is_maximal_solvable(t));

    Pairing p = Pairing::split_symmetric(4);
    Ambient so4 = make_ambient(AmbientKind::so, p);
    GeneralizedFlag iso = basis_aligned_isotropic_flags(p).front();
    LieSubalgebra bso =
        stabilizer(extend_isotropic_to_compatible(iso, p), so4, StabilizerMode::brute);
    CHECK(is_maximal_solvable(bso));
}

TEST_CASE("normalizer of a Borel is the Borel") {
    for (AmbientKind kind : {AmbientKind::gl, AmbientKind::sl}) {
        Ambient a = make_ambient(kind, 3);
        GeneralizedFlag f = coordinate_flag(3);
        LieSubalgebra b = stabilizer(f, a, StabilizerMode::brute);
        LieSubalgebra nb = normalizer(b, a);
        CHECK(nb.space() == b.space());
    }
}

TEST_CASE("normalizer contains the algebra and normalizes it") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    std::vector<Vec> nil = {flatten(unit_matrix(0, 1, 3))};
    LieSubalgebra line(gl3, Subspace::span(nil, 9));
    LieSubalgebra nl = normalizer(line, gl3);
    CHECK(nl.space().contains(line.space()));
    for (const Matrix& z : nl.basis_matrices())
        CHECK(line.space().contains(flatten(bracket(z, unit_matrix(0, 1, 3)))));
    // The zero subalgebra is normalized by everything.
    LieSubalgebra zero = LieSubalgebra::trusted(gl3, Subspace(9));
    CHECK(normalizer(zero, gl3).space() == gl3.space());
}

TEST_CASE("orbit of a vector under the coordinate Borel") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra b = stabilizer(f, gl3, StabilizerMode::brute);
    Vec e1(3), e3(3);
    e1[0] = 1;
    e3[2] = 1;
    CHECK(orbit(b, e1) == Subspace::span({e1}, 3));
    CHECK(orbit(b, e3) == Subspace::full(3));
}

TEST_CASE("element types split by the exact Jordan test") {
    CHECK(element_type(Matrix(2, 2)) == ElementType::nilpotent);
    CHECK(element_type(Matrix{{0, 1}, {0, 0}}) == ElementType::nilpotent);
    CHECK(element_type(Matrix{{1, 0}, {0, 2}}) == ElementType::semisimple);
    // Semisimple despite being non-diagonal: eigenvalues 0 and 1 split.
    CHECK(element_type(Matrix{{1, 1}, {0, 0}}) == ElementType::semisimple);
    CHECK(element_type(Matrix{{1, 1}, {0, 1}}) == ElementType::mixed);
    // Rotation matrix: semisimple over Q-bar, and the squarefree test
    // sees it without needing the eigenvalues.
    CHECK(element_type(Matrix{{0, -1}, {1, 0}}) == ElementType::semisimple);
    CHECK(element_type_name(ElementType::mixed) == "mixed");
}

TEST_CASE("stable maximal chain refines between b-stable bounds") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    GeneralizedFlag f = coordinate_flag(3);
    LieSubalgebra b = stabilizer(f, gl3, StabilizerMode::brute);
    Chain c = stable_maximal_chain(b, Subspace(3), Subspace::full(3));
    REQUIRE(c.size() == 4);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        CHECK(c.member(i + 1).dim() == c.member(i).dim() + 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (const Matrix& z : b.basis_matrices())
            for (std::size_t r = 0; r < c.member(i).dim(); ++r)
                CHECK(c.member(i).contains(z.apply(c.member(i).basis_row(r))));
    // The coordinate Borel's maximal stable chain is the coordinate tower.
    CHECK(c.member(1) == f.pair(0).succ);
    CHECK(c.member(2) == f.pair(1).succ);
}

TEST_CASE("stable maximal chain needs a solvable algebra") {
    Ambient sl2 = make_ambient(AmbientKind::sl, 2);
    LieSubalgebra all = LieSubalgebra::trusted(sl2, sl2.space());
    CHECK_THROWS_AS(stable_maximal_chain(all, Subspace(2), Subspace::full(2)),
                    precondition_error);
}

}  // TEST_SUITE
