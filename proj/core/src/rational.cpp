#include "flagstab/rational.hpp"

#include <cctype>

namespace flagstab {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw input_error("bad character in rational literal '" + text + "'");
    }
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw input_error("unparsable rational literal '" + text + "'");
    if (sgn(r.get_den()) == 0)
        throw input_error("rational with zero denominator '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& value) {
    return value.get_str();
}

std::optional<Rational> rational_sqrt(const Rational& value) {
    if (sgn(value) < 0) return std::nullopt;
    const mpz_class& num = value.get_num();
    const mpz_class& den = value.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational root(sn, sd);
    root.canonicalize();
    return root;
}

}  // namespace flagstab
