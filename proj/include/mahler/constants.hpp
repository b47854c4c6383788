#pragma once

// Closed-form constants: star body volumes, the monic slice polynomial,
// binomial products and the counting error constants.

#include "arith.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

// Fixed coefficients (w_0..w_{m-1}) = lead and (w_{d-n+1}..w_d) = trail.
struct SliceSpec {
    int d = 0;
    std::vector<std::int64_t> lead;
    std::vector<std::int64_t> trail;

    int m() const { return static_cast<int>(lead.size()); }
    int n() const { return static_cast<int>(trail.size()); }
    int g() const { return d - m() - n(); }
    std::int64_t sup_norm() const
    {
        std::int64_t s = 0;
        for (auto v : lead) s = std::max<std::int64_t>(s, v < 0 ? -v : v);
        for (auto v : trail) s = std::max<std::int64_t>(s, v < 0 ? -v : v);
        return s;
    }

    void validate() const
    {
        if (d < 0) throw std::invalid_argument("slice: d >= 0 required");
        if (m() + n() > d + 1) throw std::invalid_argument("slice: m + n <= d + 1 required");
    }

    // Hypotheses for counting minimal polynomials in a slice.
    void validate_minimal() const
    {
        validate();
        if (m() + n() < 1 || m() + n() > d) throw std::invalid_argument("slice: 0 < m+n <= d required");
        if (m() < 1 || lead[0] <= 0) throw std::invalid_argument("slice: \"l_0 > 0\" required");
        std::int64_t g0 = 0;
        for (auto v : lead) g0 = std::gcd(g0, v);
        for (auto v : trail) g0 = std::gcd(g0, v);
        if (g0 != 1) throw std::invalid_argument("slice: gcd of the fixed coefficients must be 1");
        if (n() > 0 && trail.back() == 0) throw std::invalid_argument("slice: \"r_d != 0 if n > 0\" required");
    }
};

// Polynomial in T with rational coefficients; coeff[k] multiplies T^k.
struct RatPoly {
    std::vector<Rational> coeff;

    Rational operator()(const Rational& T) const
    {
        Rational r = 0;
        for (std::size_t k = coeff.size(); k-- > 0;) r = r * T + coeff[k];
        return r;
    }
    double operator()(double T) const
    {
        double r = 0;
        for (std::size_t k = coeff.size(); k-- > 0;) r = r * T + coeff[k].get_d();
        return r;
    }
};

namespace detail {

inline Rational qpow(const Rational& b, long e)
{
    if (e >= 0) return rpow(b, static_cast<unsigned long>(e));
    Rational inv = 1 / b;
    return rpow(inv, static_cast<unsigned long>(-e));
}

inline int half_floor(int d) { return d >= 1 ? (d - 1) / 2 : -1; } // floor((d-1)/2)

} // namespace detail

inline const Rational c0{3159, 1024};
inline const Rational c1{1053, 512};
inline const Rational c2{351, 256};

// Volume of the unit star body in R^{d+1}.
inline Rational V(int d)
{
    if (d < 0) throw std::invalid_argument("V: d >= 0 required");
    const int s = detail::half_floor(d);
    Rational r = rpow(Rational(2), static_cast<unsigned long>(d + 1));
    if (s > 0) r *= rpow(Rational(d + 1), static_cast<unsigned long>(s));
    for (int j = 1; j <= s; ++j) {
        r *= detail::qpow(Rational(2 * j), d - 2 * j);
        r /= detail::qpow(Rational(2 * j + 1), d + 1 - 2 * j);
    }
    return r;
}

inline Rational script_C(int d)
{
    const int s = detail::half_floor(d);
    Rational r = rpow(Rational(2), static_cast<unsigned long>(d));
    for (int j = 1; j <= s; ++j) r *= detail::qpow(Rational(2 * j, 2 * j + 1), d - 2 * j);
    return r;
}

// Volume of the monic slice {x : mu(1, x) <= T} as a polynomial in T.
inline RatPoly p_poly(int d)
{
    if (d < 1) throw std::invalid_argument("p_poly: d >= 1 required");
    const int s = std::max(0, detail::half_floor(d));
    Integer fact = 1;
    for (int i = 2; i <= s; ++i) fact *= i;
    Rational pre = script_C(d) / (rpow(Rational(2), static_cast<unsigned long>(s)) * Rational(fact));
    RatPoly p;
    p.coeff.assign(d + 1, Rational(0));
    for (int m = 0; m <= s; ++m) {
        Rational term = pre * Rational(ipow(Integer(d - 2 * m), static_cast<unsigned long>(s)) * binomial(s, m));
        if (m % 2) term = -term;
        p.coeff[d - 2 * m] += term;
    }
    return p;
}

inline Integer P(int d)
{
    if (d < 0) throw std::invalid_argument("P: d >= 0 required");
    Integer r = 1;
    for (int j = 0; j <= d; ++j) r *= binomial(d, j);
    return r;
}

inline Integer gamma(int k) { return binomial(k, k / 2); }

inline Integer A(int d)
{
    Integer r = 0;
    for (int k = 0; k <= d; ++k) r += P(k) * P(d - k);
    return r;
}

inline Integer B(int d)
{
    Integer r = 0;
    for (int k = 0; k <= d - 1; ++k)
        r += P(k) * P(d - k) * ipow(gamma(k), d - k - 1) * ipow(gamma(d - k), k);
    return r;
}

// Empty product (= 1) when m + n = d + 1.
inline Integer C_mn(int m, int n, int d)
{
    if (m < 0 || n < 0 || m + n > d + 1) throw std::invalid_argument("C_mn: 0 <= m+n <= d+1 required");
    Integer r = 1;
    for (int j = m; j <= d - n; ++j) r *= 2 * binomial(d, j) + 1;
    return r;
}

inline Rational kappa0(int d)
{
    if (d < 0) throw std::invalid_argument("kappa0: d >= 0 required");
    Integer base = Integer(d) * binomial(d, d / 2) + 1;
    return Rational(ipow(4, d + 1) * A(d) * ipow(base, d));
}

inline Rational kappa1(int d)
{
    if (d < 2) throw std::invalid_argument("kappa1: d >= 2 required");
    return Rational(ipow(4, d) * ipow(d, d - 1) * B(d));
}

inline Rational k1_donut(const SliceSpec& s)
{
    if (s.m() + s.n() < 1) throw std::invalid_argument("k1: m + n >= 1 required");
    const int d = s.d;
    return Rational(ipow(2, static_cast<unsigned long>(d * d)) * ipow(d, d) * (s.m() + s.n()) *
                    Integer(static_cast<long>(s.sup_norm())));
}

inline double delta_T(const SliceSpec& s, double T)
{
    if (!(T > 0)) throw std::invalid_argument("delta_T: T > 0 required");
    return std::pow(k1_donut(s).get_d() / T, 1.0 / s.d);
}

inline double kappa_slice(const SliceSpec& s)
{
    const int g = s.g();
    if (g < 0) throw std::invalid_argument("kappa: m + n <= d required");
    const double k = std::pow(k1_donut(s).get_d(), 1.0 / s.d);
    return (g + 1) * std::ldexp(1.0, g + 1) * k * V(g).get_d() + (g * std::ldexp(1.0, g) * k + 1) * kappa0(g).get_d();
}

inline double c_exvol(const SliceSpec& s)
{
    const int g = s.g();
    if (s.m() + s.n() < 1 || g < 0) throw std::invalid_argument("c: 1 <= m + n <= d required");
    const double base = static_cast<double>(s.m() + s.n()) * static_cast<double>(s.sup_norm());
    return std::ldexp(1.0, s.d + 1) * std::pow(base, 1.0 / s.d) * s.d * V(g).get_d();
}

// Riemann zeta at an integer s >= 2: partial sum plus Euler-Maclaurin tail.
inline double zeta_int(int s)
{
    if (s < 2) throw std::invalid_argument("zeta: s >= 2 required");
    const int N = 2000;
    long double sum = 0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
    const long double x = N;
    sum += std::pow(x, 1 - s) / (s - 1) + 0.5L * std::pow(x, -s) + s * std::pow(x, -s - 1) / 12.0L -
           static_cast<long double>(s) * (s + 1) * (s + 2) * std::pow(x, -s - 3) / 720.0L;
    return static_cast<double>(sum);
}

// Number of positive divisors.
inline long omega(long long r)
{
    if (r == 0) throw std::invalid_argument("omega: r != 0 required");
    unsigned long long a = r < 0 ? -static_cast<unsigned long long>(r) : static_cast<unsigned long long>(r);
    long count = 1;
    for (unsigned long long p = 2; p * p <= a; ++p) {
        int e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        count *= e + 1;
    }
    if (a > 1) count *= 2;
    return count;
}

} // namespace mahler
