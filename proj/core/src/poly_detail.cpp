#include "poly_detail.hpp"

#include <algorithm>

#include "flagstab/errors.hpp"

namespace flagstab::detail {

Poly poly_normalize(Poly p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
    return p;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * Rational(static_cast<long>(i)));
    return poly_normalize(std::move(d));
}

Poly poly_monic(Poly p) {
    p = poly_normalize(std::move(p));
    if (p.empty()) return p;
    Rational inv = 1 / p.back();
    for (auto& c : p) c *= inv;
    return p;
}

Poly poly_mod(Poly a, const Poly& b) {
    require_internal(!b.empty(), "poly_mod by zero polynomial");
    a = poly_normalize(std::move(a));
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a = poly_normalize(std::move(a));
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_normalize(std::move(a));
    b = poly_normalize(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(std::move(a));
}

Poly poly_divide_exact(const Poly& a, const Poly& b) {
    Poly rem = poly_normalize(a);
    require_internal(!poly_normalize(b).empty(), "exact division by zero polynomial");
    Poly q(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0);
    while (rem.size() >= b.size() && !rem.empty()) {
        Rational f = rem.back() / b.back();
        std::size_t shift = rem.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        rem = poly_normalize(std::move(rem));
    }
    require_internal(rem.empty(), "polynomial division left a remainder");
    return poly_normalize(std::move(q));
}

Poly poly_squarefree_part(const Poly& p) {
    Poly norm = poly_normalize(p);
    require_internal(!norm.empty(), "squarefree part of zero polynomial");
    Poly d = poly_derivative(norm);
    if (d.empty()) return poly_monic(std::move(norm));
    Poly g = poly_gcd(norm, d);
    return poly_monic(poly_divide_exact(norm, g));
}

Matrix poly_eval(const Poly& p, const Matrix& m) {
    require_internal(m.rows() == m.cols(), "poly_eval needs a square matrix");
    Matrix acc(m.rows(), m.cols());
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * m;
        for (std::size_t d = 0; d < m.rows(); ++d) acc.at(d, d) += p[i];
    }
    return acc;
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& value) {
    mpz_class v = abs(value);
    require_internal(sgn(v) != 0, "divisors of zero requested");
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        throw computation_error("rational root search: coefficient too large");
    std::vector<mpz_class> divs;
    for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            divs.push_back(d);
            mpz_class other = v / d;
            if (other != d) divs.push_back(other);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Rational poly_eval_scalar(const Poly& p, const Rational& x) {
    Rational acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p) {
    Poly q = poly_normalize(p);
    require_internal(!q.empty(), "roots of zero polynomial");

    // Clear denominators to an integer polynomial.
    mpz_class den_lcm = 1;
    for (const auto& c : q) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                                    c.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    z.reserve(q.size());
    for (const auto& c : q) {
        Rational scaled = c * Rational(den_lcm);
        require_internal(scaled.get_den() == 1, "denominator clearing failed");
        z.push_back(scaled.get_num());
    }

    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < z.size() && sgn(z[low]) == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    if (low + 1 >= z.size()) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    const mpz_class& lead = z.back();
    const mpz_class& constant = z[low];
    for (const mpz_class& num : positive_divisors(constant)) {
        for (const mpz_class& den : positive_divisors(lead)) {
            for (int s : {1, -1}) {
                Rational cand(s * num, den);
                cand.canonicalize();
                if (is_zero(poly_eval_scalar(q, cand))) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace flagstab::detail
