#pragma once

// Combinatorial inequalities on P, A, B and C_{m,n}. Rational sides are
// compared exactly; the transcendental side of the A(d) bound is evaluated
// in MPFR with every rounding directed downward.

#include "constants.hpp"
#include "report.hpp"

#include <mpfr.h>

#include <string>
#include <vector>

namespace mahler {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    std::string str(int digits = 20) const
    {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

// Lower bound for 10 2^{1/4} pi^{3/4} e^{-3} e^{d^2/2+d} (2pi)^{-d/2} d^{-d/2-1/4}.
inline void a_bound_lower(int d, Mpfr& out)
{
    const mpfr_prec_t prec = mpfr_get_prec(out.get());
    Mpfr t(prec), e(prec), pi(prec);
    mpfr_set_ui(out.get(), 10, MPFR_RNDD);

    mpfr_set_d(e.get(), 0.25, MPFR_RNDN);
    mpfr_ui_pow(t.get(), 2, e.get(), MPFR_RNDD);
    mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDD);

    mpfr_const_pi(pi.get(), MPFR_RNDD);
    mpfr_set_d(e.get(), 0.75, MPFR_RNDN);
    mpfr_pow(t.get(), pi.get(), e.get(), MPFR_RNDD);
    mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDD);

    // e^{d^2/2 + d - 3}; the exponent is a half-integer, stored exactly
    mpfr_set_si(e.get(), d * d + 2 * d - 6, MPFR_RNDN);
    mpfr_div_2ui(e.get(), e.get(), 1, MPFR_RNDN);
    mpfr_exp(t.get(), e.get(), MPFR_RNDD);
    mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDD);

    // (2 pi)^{-d/2} decreases in pi, so round pi up
    mpfr_const_pi(pi.get(), MPFR_RNDU);
    mpfr_mul_2ui(pi.get(), pi.get(), 1, MPFR_RNDU);
    mpfr_set_si(e.get(), -d, MPFR_RNDN);
    mpfr_div_2ui(e.get(), e.get(), 1, MPFR_RNDN);
    mpfr_pow(t.get(), pi.get(), e.get(), MPFR_RNDD);
    mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDD);

    mpfr_set_si(e.get(), -2 * d - 1, MPFR_RNDN);
    mpfr_div_2ui(e.get(), e.get(), 2, MPFR_RNDN);
    Mpfr dd(prec);
    mpfr_set_ui(dd.get(), static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_pow(t.get(), dd.get(), e.get(), MPFR_RNDD);
    mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDD);
}

namespace detail {

inline Check exact_le(std::string name, const Rational& lhs, const Rational& rhs, bool want_equal = false)
{
    Check c;
    c.name = std::move(name);
    c.lhs = to_string(lhs);
    c.rhs = to_string(rhs);
    c.relation = want_equal ? "==" : "<=";
    c.pass = want_equal ? lhs == rhs : lhs <= rhs;
    return c;
}

} // namespace detail

inline std::vector<Check> appendix_checks(int d_max = 25)
{
    std::vector<Check> out;
    const mpfr_prec_t prec = 1024;
    for (int d = 1; d <= d_max; ++d) {
        Mpfr lhs(prec), rhs(prec);
        mpfr_set_z(lhs.get(), A(d).get_mpz_t(), MPFR_RNDU);
        a_bound_lower(d, rhs);
        Check c;
        c.name = "A(d) bound d=" + std::to_string(d);
        c.lhs = A(d).get_str();
        c.rhs = rhs.str();
        c.relation = "<=";
        c.pass = mpfr_lessequal_p(lhs.get(), rhs.get()) != 0;
        out.push_back(std::move(c));
    }
    for (int d = 0; d <= d_max; ++d)
        out.push_back(detail::exact_le("B(d) <= 2^(d^2) d=" + std::to_string(d), Rational(B(d)),
                                       Rational(ipow(2, static_cast<unsigned long>(d * d)))));
    for (int d = 0; d <= d_max; ++d) {
        const Rational p(P(d));
        const std::string ds = " d=" + std::to_string(d);
        const auto two = [](int e) { return rpow(Rational(2), static_cast<unsigned long>(e)); };
        out.push_back(detail::exact_le("C00" + ds, Rational(C_mn(0, 0, d)), c0 * two(d + 1) * p));
        out.push_back(detail::exact_le("C10" + ds, Rational(C_mn(1, 0, d)), c1 * two(d) * p));
        if (d >= 1) {
            out.push_back(detail::exact_le("C11" + ds, Rational(C_mn(1, 1, d)), c2 * two(d - 1) * p));
            out.push_back(detail::exact_le("C20" + ds, Rational(C_mn(2, 0, d)), two(d - 1) * p));
        }
        if (d >= 2) out.push_back(detail::exact_le("C21" + ds, Rational(C_mn(2, 1, d)), Rational(1, 2) * two(d - 2) * p));
    }
    for (int d = 2; d <= d_max; ++d)
        for (int k = 1; k <= d - 1; ++k) {
            const bool edge = k == 1 || k == d - 1;
            Check c = detail::exact_le("P(k)P(d-k) vs P(d-1) d=" + std::to_string(d) + " k=" + std::to_string(k),
                                       Rational(P(k) * P(d - k)), Rational(P(d - 1)), edge);
            if (!edge) {
                c.relation = "<";
                c.pass = P(k) * P(d - k) < P(d - 1);
            }
            out.push_back(std::move(c));
        }
    return out;
}

} // namespace mahler
