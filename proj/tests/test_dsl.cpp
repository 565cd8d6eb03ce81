#include <doctest.h>

#include <string>

#include "flagstab/dsl.hpp"
#include "flagstab/errors.hpp"
#include "flagstab/limits.hpp"
#include "flagstab/matrix.hpp"

using namespace flagstab;

namespace {

std::string roundtrip(const std::string& src) { return print_template(parse_template(src)); }

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("templates parse and print canonically") {
    CHECK(roundtrip("x(i) (x) (x*(i) + x*(-i)) for i >= 1") ==
          "x(i) (x) (x*(i) + x*(-i)) for i >= 1");
    CHECK(roundtrip("e(k) - e(k+1) for k >= 1") == "e(k) - e(k+1) for k >= 1");
    CHECK(roundtrip("1/2 e(k) + 2 e(k+1) - e(3) for k <= -2") ==
          "1/2 e(k) + 2 e(k+1) - e(3) for k <= -2");
    // Coefficients normalize; redundant fractions collapse.
    CHECK(roundtrip("2/4 e(k) for k >= 1") == "1/2 e(k) for k >= 1");
    CHECK(roundtrip("- e(k) for k >= 1") == "-e(k) for k >= 1");
}

TEST_CASE("print then parse is the identity on parsed forms") {
    for (const char* src :
         {"x(i) (x) (x*(i) + x*(-i)) for i >= 1", "e(k) - e(k+1) for k >= 1",
          "3 e(j-2) + 1/7 e(j) for j <= 5", "e(-m) for m >= 2"}) {
        TemplateExpr t = parse_template(src);
        CHECK(parse_template(print_template(t)) == t);
    }
}

TEST_CASE("the tensor sign accepts the unicode form") {
    TemplateExpr ascii = parse_template("x(i) (x) (x*(i)) for i >= 1");
    TemplateExpr unicode = parse_template("x(i) ⊗ (x*(i)) for i >= 1");
    CHECK(ascii == unicode);
}

TEST_CASE("quantifier bounds read both directions and negative starts") {
    TemplateExpr up = parse_template("e(k) for k >= -3");
    CHECK(up.quant.param == "k");
    CHECK(up.quant.bound == Ray{RayDir::up, -3});
    TemplateExpr down = parse_template("e(k) for k <= 5");
    CHECK(down.quant.bound == Ray{RayDir::down, 5});
}

TEST_CASE("index expressions carry sign and offset") {
    TemplateExpr t = parse_template("e(-k+2) - 2 e(k-1) + e(7) for k >= 1");
    REQUIRE(t.terms.size() == 3);
    CHECK(t.terms[0].index == IndexExpr{true, -1, 2});
    CHECK(t.terms[1].index == IndexExpr{true, 1, -1});
    CHECK(t.terms[1].coeff == Rational(-2));
    CHECK(t.terms[2].index == IndexExpr{false, 1, 7});
}

TEST_CASE("parse errors carry a position and name the problem") {
    // Nonlinear index use.
    try {
        parse_template("e(k*k) for k >= 1");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 3);
        CHECK(std::string(e.what()).find("unsupported index form") != std::string::npos);
    }
    // Quantifier parameter mismatch.
    try {
        parse_template("e(j) for k >= 1");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("does not match the quantifier parameter") !=
              std::string::npos);
    }
    CHECK_THROWS_AS(parse_template("q(k) for k >= 1"), parse_error);
    CHECK_THROWS_AS(parse_template("e(k) for k > 1"), parse_error);
    CHECK_THROWS_AS(parse_template("e(k)"), parse_error);
    CHECK_THROWS_AS(parse_template("e(k) for k >= 1 e(k)"), parse_error);
    CHECK_THROWS_AS(parse_template("0 e(k) for k >= 1"), parse_error);
    CHECK_THROWS_AS(parse_template("1/0 e(k) for k >= 1"), parse_error);
}

TEST_CASE("index sets parse and print canonically") {
    for (const char* src : {"{-inf..-1} | {3} | {5..inf}", "{1..3} | {5}", "{}"}) {
        DomainKind dom = src[1] == '-' ? DomainKind::signed_indices : DomainKind::positive;
        IndexSet s = parse_index_set(src, dom);
        CHECK(print_index_set(s) == src);
        CHECK(parse_index_set(print_index_set(s), dom) == s);
    }
    // The full signed set prints as its two domain rays.
    IndexSet all = parse_index_set("{-inf..inf}", DomainKind::signed_indices);
    CHECK(all == IndexSet::all(DomainKind::signed_indices));
    CHECK(print_index_set(all) == "{-inf..-1} | {1..inf}");
    // Finite ranges drop indices outside the domain.
    CHECK(parse_index_set("{-2..3}", DomainKind::positive) ==
          parse_index_set("{1..3}", DomainKind::positive));
    // Explicit singletons must be domain members.
    CHECK_THROWS_AS(parse_index_set("{0}", DomainKind::signed_indices), parse_error);
    CHECK_THROWS_AS(parse_index_set("{1..2", DomainKind::positive), parse_error);
}

TEST_CASE("families come from linear e templates") {
    TemplateFamily fam = family_from_template(parse_template("e(k) - e(k+1) for k >= 1"));
    CHECK(fam.param == Ray{RayDir::up, 1});
    REQUIRE(fam.terms.size() == 2);
    CHECK(fam.terms[0] == std::pair{0L, Rational(1)});
    CHECK(fam.terms[1] == std::pair{1L, Rational(-1)});
    // Tensors, x symbols, literal indices, and negated parameters have no
    // family reading.
    CHECK_THROWS_AS(family_from_template(parse_template("x(k) for k >= 1")), input_error);
    CHECK_THROWS_AS(family_from_template(parse_template("e(k) + e(3) for k >= 1")),
                    input_error);
    CHECK_THROWS_AS(family_from_template(parse_template("e(-k) for k >= 1")), input_error);
    CHECK_THROWS_AS(
        family_from_template(parse_template("x(k) (x) (x*(k)) for k >= 1")),
        input_error);
}

TEST_CASE("template matrices match the builtin extension element") {
    Scenario ex2 = builtin("paper_example_2");
    TemplateExpr t = parse_template(ex2.template_source);
    for (long level : {2L, 3L, 4L}) {
        CHECK(matrix_from_template(t, level) == scenario_extension_matrix(ex2, level));
    }
}

TEST_CASE("template matrices sum admissible parameter values only") {
    // x(i) (x) (x*(i)) over i >= 1 is the identity on the positive half.
    TemplateExpr t = parse_template("x(i) (x) (x*(i)) for i >= 1");
    Matrix m = matrix_from_template(t, 2);
    REQUIRE(m.rows() == 4);
    CHECK(m.trace() == Rational(2));
    CHECK(m * m == m);
    // Offsets that leave the window drop their instances instead of
    // wrapping around.
    TemplateExpr shifted = parse_template("x(i) (x) (x*(i+1)) for i >= 1");
    Matrix s = matrix_from_template(shifted, 2);
    CHECK(!s.is_zero());
    CHECK((s * s).is_zero());
}

TEST_CASE("template matrices reject non-tensor shapes") {
    CHECK_THROWS_AS(matrix_from_template(parse_template("e(k) for k >= 1"), 2), input_error);
    CHECK_THROWS_AS(matrix_from_template(parse_template("x(k) for k >= 1"), 2), input_error);
}

}  // TEST_SUITE
