#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flagstab/errors.hpp"
#include "flagstab/limits.hpp"
#include "flagstab/matrix.hpp"
#include "flagstab/rational.hpp"

namespace flagstab {

// Syntax diagnostic with a source position; the message names the
// expected tokens.
class parse_error : public input_error {
public:
    parse_error(const std::string& msg, std::size_t line, std::size_t column)
        : input_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Index inside a template: +-parameter plus an integer offset, or a bare
// integer literal (has_param = false, the literal in offset).
struct IndexExpr {
    bool has_param = false;
    int sign = 1;
    long offset = 0;
    bool operator==(const IndexExpr& other) const = default;
};

struct TemplateTerm;
using TemplateSum = std::vector<TemplateTerm>;

struct TemplateTerm {
    Rational coeff = 1;
    std::string symbol;  // "e", "x", or "x*"
    IndexExpr index;
    TemplateSum tensor;  // right factor of the tensor product; empty if none

    bool operator==(const TemplateTerm& other) const;
};

struct Quantifier {
    std::string param;
    Ray bound;  // ">=" gives an up ray, "<=" a down ray

    bool operator==(const Quantifier& other) const = default;
};

struct TemplateExpr {
    TemplateSum terms;
    Quantifier quant;

    bool operator==(const TemplateExpr& other) const = default;
};

// Grammar, one family per source text:
//   family := expr "for" ident cmp int
//   expr   := term (("+"|"-") term)*
//   term   := [rational] symbol "(" index ")" [tensor "(" expr ")"]
//   index  := ["-"] ident [("+"|"-") int] | ["-"] int
//   cmp    := ">=" | "<="
// Symbols are e, x, x*; the tensor sign may be written as the ASCII form
// "(x)". Coefficients are normalized and expr-level signs folded in, so
// parse after print is the identity on parsed forms.
TemplateExpr parse_template(const std::string& src);
std::string print_template(const TemplateExpr& t);

// Index-set text: pieces "{a}", "{a,b,...}", "{a..b}" (bounds may be -inf
// or inf) joined by "|"; "{}" is the empty set.
IndexSet parse_index_set(const std::string& src, DomainKind domain);
std::string print_index_set(const IndexSet& s);

// Template with symbol e, linear parameter use in every index, no tensor.
TemplateFamily family_from_template(const TemplateExpr& t);

// Instantiates an x (x) (x* ...) template over the signed domain as a
// level-window matrix, summing the admissible parameter values.
Matrix matrix_from_template(const TemplateExpr& t, long level);

}  // namespace flagstab
