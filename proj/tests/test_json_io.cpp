#include <doctest.h>

#include <string>
#include <vector>

#include "flagstab/dsl.hpp"
#include "flagstab/errors.hpp"
#include "flagstab/json_io.hpp"
#include "flagstab/limits.hpp"

using namespace flagstab;

TEST_SUITE("json") {

TEST_CASE("rationals serialize as fraction strings") {
    CHECK(rational_to_json(make_rational(-7, 3)) == Json("-7/3"));
    CHECK(rational_to_json(Rational(5)) == Json("5"));
    CHECK(rational_from_json(Json("22/7")) == make_rational(22, 7));
    // Plain JSON integers load too.
    CHECK(rational_from_json(Json(4)) == Rational(4));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), input_error);
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), input_error);
}

TEST_CASE("matrices round-trip densely") {
    Matrix m{{1, make_rational(1, 2)}, {0, -3}};
    Json j = matrix_to_json(m);
    CHECK(matrix_from_json(j) == m);
    CHECK(j[0][1] == Json("1/2"));
    CHECK_THROWS_AS(matrix_from_json(parse_json("[[\"1\"],[\"1\",\"2\"]]")), input_error);
}

TEST_CASE("subspaces round-trip and enforce canonical bases") {
    Subspace s = Subspace::span({Vec{Rational(1), Rational(1), Rational(0)},
                                 Vec{Rational(0), Rational(1), Rational(1)}},
                                3);
    Json j = subspace_to_json(s);
    CHECK(j["ambient_dim"] == Json(3));
    CHECK(subspace_from_json(j) == s);
    // A spanning set that is not in reduced form is rejected on load.
    Json bad = parse_json(R"({"ambient_dim": 2, "basis": [["1", "1"], ["0", "1"]]})");
    CHECK_THROWS_AS(subspace_from_json(bad), input_error);
    Json zero = parse_json(R"({"ambient_dim": 2, "basis": []})");
    CHECK(subspace_from_json(zero) == Subspace(2));
    CHECK(subspace_from_json(subspace_to_json(Subspace(2))) == Subspace(2));
}

TEST_CASE("pairings round-trip through named kinds and explicit grams") {
    for (const Pairing& p : {Pairing::standard_dual(3), Pairing::split_symmetric(5),
                             Pairing::split_symplectic(4)}) {
        Json j = pairing_to_json(p);
        Pairing back = pairing_from_json(j);
        CHECK(back.kind() == p.kind());
        CHECK(back.gram() == p.gram());
    }
    Pairing ex = Pairing::explicit_gram(Matrix{{1, 2}, {0, 1}});
    Json j = pairing_to_json(ex);
    CHECK(j["kind"] == Json("explicit"));
    CHECK(pairing_from_json(j).gram() == ex.gram());
    CHECK_THROWS_AS(pairing_from_json(parse_json(R"({"kind": "spooky", "dim": 4})")),
                    input_error);
}

TEST_CASE("flags round-trip and mark infinite pairs sparsely") {
    Subspace line = Subspace::span({Vec{Rational(1), Rational(0)}}, 2);
    GeneralizedFlag plain({{Subspace(2), line, false}, {line, Subspace::full(2), false}}, 2);
    Json j = flag_to_json(plain);
    CHECK(flag_from_json(j) == plain);
    CHECK(dump_json(j).find("inf_marker") == std::string::npos);

    GeneralizedFlag marked({{Subspace(2), Subspace::full(2), true}}, 2);
    Json jm = flag_to_json(marked);
    CHECK(dump_json(jm).find("inf_marker") != std::string::npos);
    CHECK(flag_from_json(jm) == marked);
    CHECK(flag_from_json(jm).pair(0).inf_marker);
}

TEST_CASE("ambients stamp the sign convention and round-trip") {
    Ambient gl3 = make_ambient(AmbientKind::gl, 3);
    Json j = ambient_to_json(gl3);
    CHECK(j["kind"] == Json("gl"));
    CHECK(j["convention"].get<std::string>().find("signed basis") != std::string::npos);
    CHECK(ambient_from_json(j) == gl3);

    Ambient so5 = make_ambient(AmbientKind::so, Pairing::split_symmetric(5));
    CHECK(ambient_from_json(ambient_to_json(so5)) == so5);
    // The shorthand {"kind": "so", "n": 5} builds the split form.
    CHECK(ambient_from_json(parse_json(R"({"kind": "so", "n": 5})")) == so5);

    Matrix id{{1, 0}, {0, 1}};
    Ambient ext = extend_ambient(make_ambient(AmbientKind::sl, 2), {id});
    Ambient back = ambient_from_json(ambient_to_json(ext));
    CHECK(back == ext);
    CHECK(back.kind() == AmbientKind::extension);
    REQUIRE(back.extra().size() == 1);
    CHECK(back.extra()[0] == id);
}

TEST_CASE("subalgebras reverify bracket closure on load") {
    Ambient gl2 = make_ambient(AmbientKind::gl, 2);
    Matrix e11(2, 2), e12(2, 2);
    e11.at(0, 0) = 1;
    e12.at(0, 1) = 1;
    LieSubalgebra b(gl2, Subspace::span({flatten(e11), flatten(e12)}, 4));
    Json j = subalgebra_to_json(b);
    LieSubalgebra back = subalgebra_from_json(j);
    CHECK(back == b);
    // span{E_12, E_21} is not bracket-closed; the loader must refuse it.
    Json bad = parse_json(R"({
      "ambient": {"kind": "gl", "n": 2},
      "basis": [[["0","1"],["0","0"]], [["0","0"],["1","0"]]]
    })");
    CHECK_THROWS_AS(subalgebra_from_json(bad), input_error);
}

TEST_CASE("index sets and templates round-trip") {
    IndexSet s(DomainKind::signed_indices, {Ray{RayDir::down, -2}, Ray{RayDir::up, 5}}, {1});
    CHECK(index_set_from_json(index_set_to_json(s)) == s);
    VecTemplate t{{-1, make_rational(1, 2)}, {3, Rational(-2)}};
    CHECK(vec_template_from_json(vec_template_to_json(t)) == t);
    // Duplicate indices accumulate instead of clobbering.
    Json dup = parse_json(R"([[1, "1"], [1, "2"]])");
    CHECK(vec_template_from_json(dup) == VecTemplate{{1, Rational(3)}});
}

TEST_CASE("descriptors round-trip through their tagged forms") {
    StableSubspace stable(IndexSet(DomainKind::signed_indices, {Ray{RayDir::down, -1}}, {}),
                          {VecTemplate{{1, Rational(1)}, {2, Rational(1)}}});
    Json js = descriptor_to_json(LimitsDescriptor(stable));
    CHECK(js["type"] == Json("stable"));
    LimitsDescriptor back = descriptor_from_json(js);
    REQUIRE(std::holds_alternative<StableSubspace>(back));
    CHECK(std::get<StableSubspace>(back) == stable);

    SeqSubspace seq;
    seq.domain = DomainKind::positive;
    seq.explicit_gens.push_back(VecTemplate{{1, Rational(1)}});
    seq.families.push_back(
        TemplateFamily{Ray{RayDir::up, 1}, {{0, Rational(1)}, {1, Rational(-1)}}});
    Json jq = descriptor_to_json(LimitsDescriptor(seq));
    CHECK(jq["type"] == Json("seq"));
    LimitsDescriptor back2 = descriptor_from_json(jq);
    REQUIRE(std::holds_alternative<SeqSubspace>(back2));
    const SeqSubspace& got = std::get<SeqSubspace>(back2);
    CHECK(got.domain == seq.domain);
    CHECK(got.explicit_gens == seq.explicit_gens);
    REQUIRE(got.families.size() == 1);
    CHECK(got.families[0].param == seq.families[0].param);
    CHECK(got.families[0].terms == seq.families[0].terms);
}

TEST_CASE("certificates and verify reports serialize their outcome") {
    Certificate c{4, 1, true};
    Certificate back = certificate_from_json(certificate_to_json(c));
    CHECK(back.level == 4);
    CHECK(back.lookahead == 1);
    CHECK(back.stable);

    VerifyReport r = verify_levels(builtin("dense_hyperplane"), "closure-is-full", 3, 4);
    Json j = verify_report_to_json(r);
    CHECK(j["scenario"] == Json("dense_hyperplane"));
    CHECK(j["check"] == Json("closure-is-full"));
    CHECK(j["all_pass"] == Json(true));
    REQUIRE(j["levels"].size() == 2);
    CHECK(j["levels"][0]["level"] == Json(3));
    CHECK(j["levels"][0]["pass"] == Json(true));
    CHECK(j["levels"][0]["certificate"]["stable"] == Json(true));
}

TEST_CASE("loaders name the missing or malformed key") {
    try {
        subspace_from_json(parse_json(R"({"basis": []})"));
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("ambient_dim") != std::string::npos);
    }
    try {
        pairing_from_json(parse_json(R"({"dim": 4})"));
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("kind") != std::string::npos);
    }
}

TEST_CASE("dump and parse are inverse with fixed layout") {
    Json j = parse_json(R"({"b": 1, "a": 2})");
    std::string text = dump_json(j);
    CHECK(text.back() == '\n');
    // Ordered documents keep insertion order, so emitted bytes are stable.
    CHECK(text.find("\"b\"") < text.find("\"a\""));
    CHECK(parse_json(text) == j);
    CHECK_THROWS_AS(parse_json("{not json"), input_error);
}

}  // TEST_SUITE
