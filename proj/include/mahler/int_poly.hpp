#pragma once

// Integer polynomials stored as coefficient vectors (w_0, ..., w_d) for
// w_0 z^d + ... + w_d, plus the rational helpers used for gcd and
// square-free decomposition.

#include "arith.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mahler {

class IntPoly {
public:
    std::vector<Integer> coeffs; // w_0 first

    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> c) : coeffs(std::move(c)) {}
    IntPoly(std::initializer_list<long> c)
    {
        for (long v : c) coeffs.emplace_back(v);
    }
    static IntPoly from_span(std::span<const std::int64_t> w)
    {
        IntPoly p;
        p.coeffs.reserve(w.size());
        for (auto v : w) p.coeffs.emplace_back(static_cast<long>(v));
        return p;
    }

    // Number of stored coefficients minus one (the nominal degree).
    int length_degree() const { return static_cast<int>(coeffs.size()) - 1; }

    bool is_zero() const
    {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; });
    }

    int leading_zeros() const
    {
        int z = 0;
        while (z < static_cast<int>(coeffs.size()) && coeffs[z] == 0) ++z;
        return z;
    }

    // Degree of the polynomial; 0 for the zero polynomial.
    int degree() const
    {
        if (is_zero()) return 0;
        return length_degree() - leading_zeros();
    }

    const Integer& lead() const { return coeffs[leading_zeros()]; }

    // Drop leading zero coefficients; the zero polynomial becomes {0}.
    IntPoly trimmed() const
    {
        if (is_zero()) return IntPoly{0};
        return IntPoly(std::vector<Integer>(coeffs.begin() + leading_zeros(), coeffs.end()));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b)
    {
        IntPoly x = a.trimmed(), y = b.trimmed();
        return x.coeffs == y.coeffs;
    }
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p)
{
    os << "(";
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << (i ? "," : "") << p.coeffs[i].get_str();
    return os << ")";
}

// A real point of R^{d+1}, read as the coefficients of a real polynomial.
struct CoeffVector {
    std::vector<double> entries;
    int dimension() const { return static_cast<int>(entries.size()); }
};

inline IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.coeffs.empty() || b.coeffs.empty()) return IntPoly{};
    std::vector<Integer> r(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) r[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPoly(std::move(r)).trimmed();
}

inline IntPoly scaled(const IntPoly& p, const Integer& t)
{
    IntPoly r = p;
    for (auto& c : r.coeffs) c *= t;
    return r;
}

inline IntPoly derivative(const IntPoly& p)
{
    IntPoly q = p.trimmed();
    int n = q.length_degree();
    if (n <= 0) return IntPoly{0};
    std::vector<Integer> r(n);
    for (int i = 0; i < n; ++i) r[i] = q.coeffs[i] * (n - i);
    return IntPoly(std::move(r));
}

// gcd of the coefficients, nonnegative.
inline Integer content(const IntPoly& p)
{
    Integer g = 0;
    for (const auto& c : p.coeffs) g = gcd(g, c);
    return g;
}

inline Integer content_checked(const IntPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("content: zero polynomial");
    return content(p);
}

inline bool is_primitive(const IntPoly& p) { return content_checked(p) == 1; }

// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p)
{
    IntPoly q = p.trimmed();
    if (q.is_zero()) return q;
    Integer c = content(q);
    if (q.coeffs[0] < 0) c = -c;
    for (auto& x : q.coeffs) x /= c;
    return q;
}

// Exact quotient a / b if b divides a in Z[z].
inline bool divides_exact(const IntPoly& a, const IntPoly& b, IntPoly& quotient)
{
    IntPoly num = a.trimmed(), den = b.trimmed();
    if (den.is_zero()) return false;
    int n = num.length_degree(), m = den.length_degree();
    if (num.is_zero()) {
        quotient = IntPoly{0};
        return true;
    }
    if (n < m) return false;
    std::vector<Integer> q(n - m + 1, 0);
    std::vector<Integer> r = num.coeffs;
    const Integer& lb = den.coeffs[0];
    for (int i = 0; i <= n - m; ++i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), lb.get_mpz_t())) return false;
        Integer c = r[i] / lb;
        q[i] = c;
        for (int j = 0; j <= m; ++j) r[i + j] -= c * den.coeffs[j];
    }
    for (const auto& x : r)
        if (x != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

// Exact integer value of the polynomial at a rational point, times den^deg.
inline Integer eval_homogeneous(const IntPoly& p, const Integer& num, const Integer& den)
{
    // sum w_i num^{n-i} den^i
    Integer acc = 0;
    int n = p.length_degree();
    std::vector<Integer> dp(n + 1);
    dp[0] = 1;
    for (int i = 1; i <= n; ++i) dp[i] = dp[i - 1] * den;
    Integer npow = 1;
    for (int i = n; i >= 0; --i) {
        acc += p.coeffs[i] * npow * dp[i];
        npow *= num;
    }
    return acc;
}

namespace detail {

using QPoly = std::vector<Rational>; // leading first, no leading zeros except {0}

inline QPoly qtrim(QPoly p)
{
    std::size_t z = 0;
    while (z + 1 < p.size() && p[z] == 0) ++z;
    return QPoly(p.begin() + static_cast<long>(z), p.end());
}

inline bool qzero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

inline QPoly to_q(const IntPoly& p)
{
    QPoly r;
    for (const auto& c : p.trimmed().coeffs) r.emplace_back(c);
    return r;
}

inline QPoly qderiv(const QPoly& p)
{
    int n = static_cast<int>(p.size()) - 1;
    if (n <= 0) return {Rational(0)};
    QPoly r(n);
    for (int i = 0; i < n; ++i) r[i] = p[i] * (n - i);
    return qtrim(r);
}

inline QPoly qsub(const QPoly& a, const QPoly& b)
{
    std::size_t n = std::max(a.size(), b.size());
    QPoly r(n, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[n - a.size() + i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[n - b.size() + i] -= b[i];
    return qtrim(r);
}

inline std::pair<QPoly, QPoly> qdivmod(const QPoly& a, const QPoly& b)
{
    if (qzero(b)) throw std::domain_error("polynomial division by zero");
    int n = static_cast<int>(a.size()) - 1, m = static_cast<int>(b.size()) - 1;
    if (n < m || qzero(a)) return {{Rational(0)}, a};
    QPoly q(n - m + 1, Rational(0)), r = a;
    for (int i = 0; i <= n - m; ++i) {
        Rational c = r[i] / b[0];
        q[i] = c;
        if (c == 0) continue;
        for (int j = 0; j <= m; ++j) r[i + j] -= c * b[j];
    }
    QPoly rem(r.begin() + (n - m + 1), r.end());
    if (rem.empty()) rem = {Rational(0)};
    return {qtrim(q), qtrim(rem)};
}

inline QPoly qmonic(QPoly p)
{
    if (qzero(p)) return p;
    Rational l = p[0];
    for (auto& c : p) c /= l;
    return p;
}

inline QPoly qgcd(QPoly a, QPoly b)
{
    a = qtrim(a);
    b = qtrim(b);
    while (!qzero(b)) {
        auto r = qdivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return qmonic(a);
}

inline IntPoly q_to_primitive(const QPoly& p)
{
    Integer l = 1;
    for (const auto& c : p) l = lcm(l, c.get_den());
    std::vector<Integer> r;
    for (const auto& c : p) r.push_back(c.get_num() * (l / c.get_den()));
    return primitive_part(IntPoly(std::move(r)));
}

} // namespace detail

// Yun's algorithm over Q: p = c * prod a_i^i with a_i primitive, square-free
// and pairwise coprime. Factors equal to 1 are omitted.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p)
{
    using namespace detail;
    std::vector<std::pair<IntPoly, int>> out;
    QPoly f = qmonic(to_q(p));
    if (f.size() <= 1) return out;
    QPoly fp = qderiv(f);
    QPoly b = qgcd(f, fp);
    QPoly c = qdivmod(f, b).first;
    QPoly d = qsub(qdivmod(fp, b).first, qderiv(c));
    for (int i = 1; c.size() > 1; ++i) {
        QPoly a = qgcd(c, d);
        if (a.size() > 1) out.emplace_back(q_to_primitive(a), i);
        c = qdivmod(c, a).first;
        d = qsub(qdivmod(d, a).first, qderiv(c));
    }
    return out;
}

inline bool is_squarefree(const IntPoly& p)
{
    using namespace detail;
    QPoly f = to_q(p);
    if (f.size() <= 2) return true;
    return qgcd(f, qderiv(f)).size() == 1;
}

} // namespace mahler
