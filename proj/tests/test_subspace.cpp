#include <doctest.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "flagstab/errors.hpp"
#include "flagstab/matrix.hpp"
#include "flagstab/subspace.hpp"

using namespace flagstab;

namespace {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    Rational rat() {
        long num = static_cast<long>(next() % 9) - 4;
        long den = static_cast<long>(next() % 2) + 1;
        return make_rational(num, den);
    }
    Vec vec(std::size_t dim) {
        Vec v(dim);
        for (auto& entry : v) entry = rat();
        return v;
    }
    Subspace subspace(std::size_t dim) {
        std::size_t count = next() % (dim + 1);
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < count; ++i) gens.push_back(vec(dim));
        return Subspace::span(gens, dim);
    }
};

}  // namespace

TEST_SUITE("subspace") {

TEST_CASE("span reduces generators to the canonical basis") {
    std::vector<Vec> gens = {Vec{Rational(1), Rational(1), Rational(0)},
                             Vec{Rational(0), Rational(1), Rational(1)},
                             Vec{Rational(1), Rational(2), Rational(1)}};
    Subspace s = Subspace::span(gens, 3);
    CHECK(s.dim() == 2);
    CHECK(s.basis_row(0) == Vec{Rational(1), Rational(0), Rational(-1)});
    CHECK(s.basis_row(1) == Vec{Rational(0), Rational(1), Rational(1)});
}

TEST_CASE("equality is independent of the generating set") {
    std::vector<Vec> a = {Vec{Rational(1), Rational(0)}, Vec{Rational(0), Rational(1)}};
    std::vector<Vec> b = {Vec{Rational(2), Rational(3)}, Vec{Rational(5), Rational(-1)}};
    CHECK(Subspace::span(a, 2) == Subspace::span(b, 2));
    CHECK(Subspace::span(a, 2) == Subspace::full(2));
}

TEST_CASE("from_rref rejects non-canonical bases") {
    CHECK_THROWS_AS(Subspace::from_rref(Matrix{{2, 0}, {0, 1}}, 2), input_error);
    CHECK_THROWS_AS(Subspace::from_rref(Matrix{{0, 1}, {1, 0}}, 2), input_error);
    CHECK_THROWS_AS(Subspace::from_rref(Matrix{{1, 1}, {0, 1}}, 2), input_error);
    CHECK_NOTHROW(Subspace::from_rref(Matrix{{1, 0}, {0, 1}}, 2));
}

TEST_CASE("contains and reduce agree") {
    Subspace s = Subspace::span({Vec{Rational(1), Rational(0), Rational(-1)}}, 3);
    Vec inside{Rational(2), Rational(0), Rational(-2)};
    Vec outside{Rational(1), Rational(1), Rational(0)};
    CHECK(s.contains(inside));
    CHECK(!s.contains(outside));
    Vec r = s.reduce(inside);
    for (const Rational& entry : r) CHECK(is_zero(entry));
    CHECK(!s.contains(Subspace::full(3)));
    CHECK(Subspace::full(3).contains(s));
}

TEST_CASE("coordinates invert the basis combination") {
    Subspace s = Subspace::span({Vec{Rational(1), Rational(1), Rational(0)},
                                 Vec{Rational(0), Rational(0), Rational(1)}},
                                3);
    Vec v{Rational(3), Rational(3), Rational(-2)};
    std::optional<Vec> coords = s.coordinates(v);
    REQUIRE(coords.has_value());
    REQUIRE(coords->size() == 2);
    Vec rebuilt(3);
    for (std::size_t i = 0; i < 2; ++i) {
        Vec row = s.basis_row(i);
        for (std::size_t c = 0; c < 3; ++c) rebuilt[c] += (*coords)[i] * row[c];
    }
    CHECK(rebuilt == v);
    CHECK(!s.coordinates(Vec{Rational(1), Rational(0), Rational(0)}).has_value());
}

TEST_CASE("sum and intersect satisfy the dimension formula") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        Subspace a = rng.subspace(5);
        Subspace b = rng.subspace(5);
        Subspace s = a.sum(b);
        Subspace i = a.intersect(b);
        CHECK(s.dim() + i.dim() == a.dim() + b.dim());
        CHECK(s.contains(a));
        CHECK(s.contains(b));
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        CHECK(a.sum(b) == b.sum(a));
        CHECK(a.intersect(b) == b.intersect(a));
    }
}

TEST_CASE("annihilator is dimension-complementary and involutive") {
    Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        Subspace a = rng.subspace(4);
        Subspace ann = a.annihilator();
        CHECK(a.dim() + ann.dim() == 4);
        CHECK(ann.annihilator() == a);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < ann.dim(); ++j) {
                Rational dot = 0;
                Vec x = a.basis_row(i);
                Vec y = ann.basis_row(j);
                for (std::size_t c = 0; c < 4; ++c) dot += x[c] * y[c];
                CHECK(is_zero(dot));
            }
    }
}

TEST_CASE("ordering is a strict total order usable for sets") {
    Rng rng(23);
    std::vector<Subspace> spaces;
    for (int trial = 0; trial < 15; ++trial) spaces.push_back(rng.subspace(4));
    for (const Subspace& a : spaces)
        for (const Subspace& b : spaces) {
            bool lt = a < b;
            bool gt = b < a;
            bool eq = a == b;
            CHECK(((lt ? 1 : 0) + (gt ? 1 : 0) + (eq ? 1 : 0)) == 1);
        }
}

TEST_CASE("accumulator builds the same subspace incrementally") {
    Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec> gens;
        std::size_t count = rng.next() % 6;
        for (std::size_t i = 0; i < count; ++i) gens.push_back(rng.vec(4));
        RrefAccumulator acc(4);
        for (const Vec& g : gens) acc.insert(g);
        CHECK(acc.to_subspace() == Subspace::span(gens, 4));
        // insert reports whether the vector enlarged the span
        RrefAccumulator again(4);
        std::size_t before = 0;
        for (const Vec& g : gens) {
            bool grew = again.insert(g);
            CHECK(grew == (again.dim() != before));
            before = again.dim();
        }
    }
}

TEST_CASE("zero and full subspaces behave at the boundaries") {
    Subspace zero(4);
    Subspace full = Subspace::full(4);
    CHECK(zero.is_zero());
    CHECK(full.is_full());
    CHECK(zero.sum(full) == full);
    CHECK(zero.intersect(full) == zero);
    CHECK(zero.annihilator() == Subspace::full(4));
    CHECK(full.annihilator() == zero);
}

}  // TEST_SUITE
