#pragma once

// Exact integers and rationals (GMP), plus the few conversions the rest of
// the library needs.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mahler {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Small binomials for the hot path; exact for n <= 60.
inline std::int64_t binom64(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::int64_t>(r);
}

inline Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational& b, unsigned long e)
{
    Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    r.canonicalize();
    return r;
}

inline Integer floor_q(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_q(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer abs_z(const Integer& z) { return abs(z); }

// Nearest long double; relative error below 2^-62.
inline long double to_ld(const Integer& z)
{
    long sz = static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
    if (sz <= 63) return static_cast<long double>(z.get_si());
    Integer t;
    mpz_tdiv_q_2exp(t.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(sz - 63));
    return std::ldexp(static_cast<long double>(t.get_si()), static_cast<int>(sz - 63));
}

inline long double to_ld(const Rational& q)
{
    return to_ld(q.get_num()) / to_ld(q.get_den());
}

inline bool fits_i64(const Integer& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

inline std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "7", "-3/4", "1.7320508", "2.5e3". Decimal strings are read exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(s.substr(epos + 1));
        s = s.substr(0, epos);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    std::string digits;
    long frac = 0;
    bool dot = false;
    for (char c : s) {
        if (c == '.') {
            if (dot) throw std::invalid_argument("bad number: " + std::string(text));
            dot = true;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            if (dot) ++frac;
        } else {
            throw std::invalid_argument("bad number: " + std::string(text));
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad number: " + std::string(text));
    Integer num(digits);
    if (neg) num = -num;
    exp10 -= frac;
    Rational q;
    if (exp10 >= 0)
        q = Rational(num * ipow(10, static_cast<unsigned long>(exp10)));
    else
        q = Rational(num, ipow(10, static_cast<unsigned long>(-exp10)));
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace mahler
