#include "flagstab/dsl.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "flagstab/liealg.hpp"
#include "flagstab/pairing.hpp"

namespace flagstab {

bool TemplateTerm::operator==(const TemplateTerm& other) const {
    return coeff == other.coeff && symbol == other.symbol && index == other.index &&
           tensor == other.tensor;
}

namespace {

enum class Tok { number, ident, plus, minus, slash, lparen, rparen, tensor, ge, le, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

const char* token_label(Tok k) {
    switch (k) {
        case Tok::number: return "a number";
        case Tok::ident: return "a name";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::slash: return "'/'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::tensor: return "the tensor sign";
        case Tok::ge: return "'>='";
        case Tok::le: return "'<='";
        case Tok::end: return "end of input";
    }
    return "?";
}

// Identifiers glue one trailing '*' (x* is a symbol of its own); columns
// count bytes, with the three-byte tensor sign as one column.
std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        unsigned char ch = static_cast<unsigned char>(src[i]);
        if (ch == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++column;
            ++i;
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column;
        if (std::isdigit(ch)) {
            tok.kind = Tok::number;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                tok.text += src[i++];
                ++column;
            }
        } else if (std::isalpha(ch) || ch == '_') {
            tok.kind = Tok::ident;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                tok.text += src[i++];
                ++column;
            }
            if (i < src.size() && src[i] == '*') {
                tok.text += src[i++];
                ++column;
            }
        } else {
            switch (ch) {
                case '+': tok.kind = Tok::plus; break;
                case '-': tok.kind = Tok::minus; break;
                case '/': tok.kind = Tok::slash; break;
                case '(': tok.kind = Tok::lparen; break;
                case ')': tok.kind = Tok::rparen; break;
                case '>':
                case '<':
                    if (i + 1 >= src.size() || src[i + 1] != '=')
                        throw parse_error(std::string("expected '") + static_cast<char>(ch) +
                                              "='",
                                          line, column);
                    tok.kind = ch == '>' ? Tok::ge : Tok::le;
                    ++i;
                    ++column;
                    break;
                case 0xE2:
                    if (i + 2 < src.size() &&
                        static_cast<unsigned char>(src[i + 1]) == 0x8A &&
                        static_cast<unsigned char>(src[i + 2]) == 0x97) {
                        tok.kind = Tok::tensor;
                        i += 2;
                        break;
                    }
                    [[fallthrough]];
                default:
                    throw parse_error("unexpected character", line, column);
            }
            ++i;
            ++column;
        }
        out.push_back(std::move(tok));
    }
    out.push_back({Tok::end, "", line, column});
    return out;
}

struct ParamUse {
    std::string name;
    std::size_t line;
    std::size_t column;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return toks_[i < toks_.size() ? i : toks_.size() - 1];
    }

    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    const Token& expect(Tok kind) {
        if (peek().kind != kind) throw error(std::string("expected ") + token_label(kind));
        return advance();
    }

    parse_error error(const std::string& msg) const {
        return parse_error(msg, peek().line, peek().column);
    }

    std::vector<ParamUse>& params() { return params_; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<ParamUse> params_;
};

long parse_long(const Token& tok) {
    try {
        return std::stol(tok.text);
    } catch (const std::exception&) {
        throw parse_error("integer out of range", tok.line, tok.column);
    }
}

Rational parse_coeff(Parser& p) {
    const Token& num = p.expect(Tok::number);
    Rational value(num.text);
    if (p.peek().kind == Tok::slash) {
        p.advance();
        const Token& den = p.expect(Tok::number);
        if (den.text.find_first_not_of('0') == std::string::npos)
            throw parse_error("zero denominator", den.line, den.column);
        value /= Rational(den.text);
    }
    value.canonicalize();
    return value;
}

IndexExpr parse_index(Parser& p) {
    IndexExpr ix;
    bool negated = false;
    if (p.peek().kind == Tok::minus) {
        p.advance();
        negated = true;
    }
    if (p.peek().kind == Tok::number) {
        long v = parse_long(p.advance());
        ix.has_param = false;
        ix.offset = negated ? -v : v;
        return ix;
    }
    if (p.peek().kind != Tok::ident)
        throw p.error("expected an index (a parameter or an integer)");
    const Token& name = p.advance();
    if (name.text.back() == '*')
        throw parse_error("unsupported index form (must be the parameter plus an integer)",
                          name.line, name.column);
    p.params().push_back({name.text, name.line, name.column});
    ix.has_param = true;
    ix.sign = negated ? -1 : 1;
    if (p.peek().kind == Tok::plus || p.peek().kind == Tok::minus) {
        bool minus = p.peek().kind == Tok::minus;
        p.advance();
        if (p.peek().kind != Tok::number)
            throw p.error("unsupported index form (must be the parameter plus an integer)");
        long v = parse_long(p.advance());
        ix.offset = minus ? -v : v;
    }
    // Anything still glued to the index (k*k, k k, ...) is nonlinear.
    if (p.peek().kind != Tok::rparen)
        throw p.error("unsupported index form (must be the parameter plus an integer)");
    return ix;
}

TemplateSum parse_sum(Parser& p);

TemplateTerm parse_term(Parser& p) {
    TemplateTerm term;
    if (p.peek().kind == Tok::number) term.coeff = parse_coeff(p);
    const Token& sym = p.peek();
    if (sym.kind != Tok::ident) throw p.error("expected a basis symbol (e, x, or x*)");
    if (sym.text != "e" && sym.text != "x" && sym.text != "x*")
        throw parse_error("unknown basis symbol '" + sym.text + "' (expected e, x, or x*)",
                          sym.line, sym.column);
    term.symbol = sym.text;
    p.advance();
    p.expect(Tok::lparen);
    term.index = parse_index(p);
    p.expect(Tok::rparen);
    bool tensor = false;
    if (p.peek().kind == Tok::tensor) {
        p.advance();
        tensor = true;
    } else if (p.peek().kind == Tok::lparen && p.peek(1).kind == Tok::ident &&
               p.peek(1).text == "x" && p.peek(2).kind == Tok::rparen) {
        p.advance();
        p.advance();
        p.advance();
        tensor = true;
    }
    if (tensor) {
        p.expect(Tok::lparen);
        term.tensor = parse_sum(p);
        p.expect(Tok::rparen);
    }
    if (is_zero(term.coeff)) throw p.error("zero coefficient");
    return term;
}

TemplateSum parse_sum(Parser& p) {
    TemplateSum terms;
    bool negate = false;
    if (p.peek().kind == Tok::minus) {
        p.advance();
        negate = true;
    }
    for (;;) {
        TemplateTerm term = parse_term(p);
        if (negate) term.coeff = -term.coeff;
        terms.push_back(std::move(term));
        if (p.peek().kind != Tok::plus && p.peek().kind != Tok::minus) break;
        negate = p.peek().kind == Tok::minus;
        p.advance();
    }
    return terms;
}

std::string index_text(const IndexExpr& ix, const std::string& param) {
    if (!ix.has_param) return std::to_string(ix.offset);
    std::string out = ix.sign < 0 ? "-" + param : param;
    if (ix.offset > 0) out += "+" + std::to_string(ix.offset);
    if (ix.offset < 0) out += "-" + std::to_string(-ix.offset);
    return out;
}

std::string sum_text(const TemplateSum& terms, const std::string& param) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const TemplateTerm& term = terms[i];
        bool negative = sgn(term.coeff) < 0;
        if (i == 0) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        Rational mag = negative ? Rational(-term.coeff) : term.coeff;
        if (mag != 1) out += rational_to_string(mag) + " ";
        out += term.symbol + "(" + index_text(term.index, param) + ")";
        if (!term.tensor.empty()) out += " (x) (" + sum_text(term.tensor, param) + ")";
    }
    return out;
}

}  // namespace

TemplateExpr parse_template(const std::string& src) {
    Parser p(lex(src));
    TemplateExpr expr;
    expr.terms = parse_sum(p);
    const Token& kw = p.peek();
    if (kw.kind != Tok::ident || kw.text != "for")
        throw p.error("expected '+', '-', or 'for'");
    p.advance();
    const Token& name = p.expect(Tok::ident);
    if (name.text.back() == '*' || name.text == "for")
        throw parse_error("bad parameter name '" + name.text + "'", name.line, name.column);
    expr.quant.param = name.text;
    RayDir dir;
    if (p.peek().kind == Tok::ge) {
        dir = RayDir::up;
    } else if (p.peek().kind == Tok::le) {
        dir = RayDir::down;
    } else {
        throw p.error("expected '>=' or '<='");
    }
    p.advance();
    bool negated = false;
    if (p.peek().kind == Tok::minus) {
        p.advance();
        negated = true;
    }
    long bound = parse_long(p.expect(Tok::number));
    expr.quant.bound = Ray{dir, negated ? -bound : bound};
    if (p.peek().kind != Tok::end) throw p.error("expected end of input");
    for (const ParamUse& use : p.params()) {
        if (use.name != expr.quant.param)
            throw parse_error("index parameter '" + use.name +
                                  "' does not match the quantifier parameter '" +
                                  expr.quant.param + "'",
                              use.line, use.column);
    }
    return expr;
}

std::string print_template(const TemplateExpr& t) {
    std::string out = sum_text(t.terms, t.quant.param);
    out += " for " + t.quant.param;
    out += t.quant.bound.dir == RayDir::up ? " >= " : " <= ";
    out += std::to_string(t.quant.bound.start);
    return out;
}

namespace {

// Scanner for the index-set notation; positions are 1-based columns into
// the single-line source.
class SetScanner {
public:
    explicit SetScanner(const std::string& src) : src_(src) {}

    void skip_ws() {
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t')) ++i_;
    }

    bool done() {
        skip_ws();
        return i_ >= src_.size();
    }

    char peek() {
        skip_ws();
        return i_ < src_.size() ? src_[i_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) throw error(std::string("expected '") + c + "'");
    }

    bool accept_word(const std::string& word) {
        skip_ws();
        if (src_.compare(i_, word.size(), word) != 0) return false;
        i_ += word.size();
        return true;
    }

    parse_error error(const std::string& msg) const {
        return parse_error(msg, 1, i_ + 1);
    }

    long integer() {
        skip_ws();
        std::size_t start = i_;
        if (i_ < src_.size() && src_[i_] == '-') ++i_;
        std::size_t digits = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        if (i_ == digits) {
            i_ = start;
            throw error("expected an integer");
        }
        try {
            return std::stol(src_.substr(start, i_ - start));
        } catch (const std::exception&) {
            i_ = start;
            throw error("integer out of range");
        }
    }

private:
    const std::string& src_;
    std::size_t i_ = 0;
};

// A range bound: finite value, or one of the infinite markers.
struct Bound {
    enum Kind { neg_inf, finite, pos_inf } kind = finite;
    long value = 0;
};

Bound parse_bound(SetScanner& sc) {
    if (sc.accept_word("-inf")) return {Bound::neg_inf, 0};
    if (sc.accept_word("inf")) return {Bound::pos_inf, 0};
    return {Bound::finite, sc.integer()};
}

}  // namespace

IndexSet parse_index_set(const std::string& src, DomainKind domain) {
    SetScanner sc(src);
    std::vector<Ray> rays;
    std::vector<long> singles;
    auto add_finite_range = [&](long lo, long hi) {
        if (lo > hi) throw sc.error("range bounds out of order");
        for (long i = lo; i <= hi; ++i)
            if (valid_index(domain, i)) singles.push_back(i);
    };
    do {
        sc.expect('{');
        if (sc.accept('}')) continue;  // {} contributes nothing
        Bound first = parse_bound(sc);
        if (sc.accept('.')) {
            sc.expect('.');
            Bound second = parse_bound(sc);
            if (first.kind == Bound::pos_inf || second.kind == Bound::neg_inf)
                throw sc.error("range bounds out of order");
            if (first.kind == Bound::neg_inf && second.kind == Bound::pos_inf) {
                if (domain == DomainKind::signed_indices) rays.push_back({RayDir::down, -1});
                rays.push_back({RayDir::up, 1});
            } else if (first.kind == Bound::neg_inf) {
                // Positive-domain down rays are legal only with a valid end.
                if (!valid_index(domain, second.value))
                    throw sc.error("ray end is not in the domain");
                rays.push_back({RayDir::down, second.value});
            } else if (second.kind == Bound::pos_inf) {
                if (!valid_index(domain, first.value))
                    throw sc.error("ray start is not in the domain");
                rays.push_back({RayDir::up, first.value});
            } else {
                add_finite_range(first.value, second.value);
            }
            sc.expect('}');
            continue;
        }
        if (first.kind != Bound::finite) throw sc.error("lone bound must be an integer");
        if (!valid_index(domain, first.value)) throw sc.error("index is not in the domain");
        singles.push_back(first.value);
        while (sc.accept(',')) {
            long v = sc.integer();
            if (!valid_index(domain, v)) throw sc.error("index is not in the domain");
            singles.push_back(v);
        }
        sc.expect('}');
    } while (sc.accept('|'));
    if (!sc.done()) throw sc.error("expected '|' or end of input");
    return IndexSet(domain, rays, singles);
}

std::string print_index_set(const IndexSet& s) {
    if (s.empty()) return "{}";
    std::vector<std::string> pieces;
    if (s.down()) pieces.push_back("{-inf.." + std::to_string(*s.down()) + "}");
    const std::set<long>& singles = s.singles();
    for (auto it = singles.begin(); it != singles.end();) {
        long lo = *it;
        long hi = lo;
        auto run = std::next(it);
        while (run != singles.end() && *run == next_index(s.domain(), hi)) {
            hi = *run;
            ++run;
        }
        pieces.push_back(lo == hi
                             ? "{" + std::to_string(lo) + "}"
                             : "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}");
        it = run;
    }
    if (s.up()) pieces.push_back("{" + std::to_string(*s.up()) + "..inf}");
    std::string out = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i) out += " | " + pieces[i];
    return out;
}

TemplateFamily family_from_template(const TemplateExpr& t) {
    TemplateFamily fam;
    fam.param = t.quant.bound;
    for (const TemplateTerm& term : t.terms) {
        if (!term.tensor.empty())
            throw input_error("generator templates do not take tensor factors");
        if (term.symbol != "e")
            throw input_error("generator templates use the e symbol");
        if (!term.index.has_param || term.index.sign < 0)
            throw input_error("generator template indices must be the parameter plus an integer");
        fam.terms.emplace_back(term.index.offset, term.coeff);
    }
    return fam;
}

namespace {

long instance_index(const IndexExpr& ix, long k) {
    return ix.has_param ? ix.sign * k + ix.offset : ix.offset;
}

long offset_radius(const TemplateExpr& t) {
    long radius = 0;
    auto visit = [&](const TemplateSum& terms, auto&& self) -> void {
        for (const TemplateTerm& term : terms) {
            long off = term.index.offset;
            if (off < 0) off = -off;
            if (off > radius) radius = off;
            self(term.tensor, self);
        }
    };
    visit(t.terms, visit);
    return radius;
}

}  // namespace

Matrix matrix_from_template(const TemplateExpr& t, long level) {
    if (level < 1) throw input_error("matrix templates need a level of at least 1");
    for (const TemplateTerm& term : t.terms) {
        if (term.symbol != "x" || term.tensor.empty())
            throw input_error("matrix templates are sums of x(...) (x) (...) terms");
        for (const TemplateTerm& inner : term.tensor)
            if (inner.symbol != "x*" || !inner.tensor.empty())
                throw input_error("matrix template right factors are sums of x*(...) terms");
    }
    std::size_t dim = level_dim(DomainKind::signed_indices, level);
    Pairing dual = Pairing::standard_dual(dim);
    Matrix sum(dim, dim);
    long spread = offset_radius(t);
    long lo = t.quant.bound.dir == RayDir::up ? t.quant.bound.start : -(level + spread);
    long hi = t.quant.bound.dir == RayDir::up ? level + spread : t.quant.bound.start;
    for (long k = lo; k <= hi; ++k) {
        for (const TemplateTerm& term : t.terms) {
            long row = instance_index(term.index, k);
            if (!valid_index(DomainKind::signed_indices, row) ||
                !index_in_level(DomainKind::signed_indices, row, level))
                continue;
            Vec right(dim, Rational(0));
            bool admissible = true;
            for (const TemplateTerm& inner : term.tensor) {
                long col = instance_index(inner.index, k);
                if (!valid_index(DomainKind::signed_indices, col) ||
                    !index_in_level(DomainKind::signed_indices, col, level)) {
                    admissible = false;
                    break;
                }
                right[signed_position(col, dim)] += inner.coeff;
            }
            if (!admissible) continue;
            Matrix piece =
                embed_tensor(signed_unit(row, dim), right, dual, TensorFlavor::otimes);
            sum = sum + piece.scaled(term.coeff);
        }
    }
    return sum;
}

}  // namespace flagstab
