#pragma once

// Registry of explicit right-hand sides, each with its regime stated as text.

#include "constants.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mahler {

class RegimeViolation : public std::domain_error {
public:
    RegimeViolation(const std::string& tag, std::string cond)
        : std::domain_error(tag + ": requires " + cond), condition(std::move(cond))
    {
    }
    std::string condition;
};

// Unused fields stay at their defaults. H and T are linked by T = H^d;
// supplying either one is enough.
struct BoundParams {
    int d = 0;
    double H = std::numeric_limits<double>::quiet_NaN();
    double T = std::numeric_limits<double>::quiet_NaN();
    long long nu = 0; // norm
    long long r = 0;  // fixed constant coefficient
    long long t = 0;  // fixed second coefficient

    double height() const { return std::isnan(H) ? std::pow(T, 1.0 / d) : H; }
    double measure() const { return std::isnan(T) ? std::pow(H, d) : T; }
};

struct BoundFormula {
    std::string tag;
    std::string regime; // verbatim hypothesis
    std::function<long double(const BoundParams&)> evaluate;
};

namespace detail {

inline long double ldpow(long double b, long double e) { return std::pow(b, e); }

inline void require(bool ok, const std::string& tag, const std::string& cond)
{
    if (!ok) throw RegimeViolation(tag, cond);
}

inline long double P_ld(int d) { return to_ld(P(d)); }

inline long double exsum_iii_rhs(int d, long double H)
{
    return 0.0000126L * d * d * d * ldpow(4, d) * ldpow(15.01L, d * d) * ldpow(H, d * (d - 1) - 1);
}

inline long double large_height(int d) { return d * std::pow(2.0L, d + 1.0L / d); }

} // namespace detail

inline const std::vector<BoundFormula>& bound_registry()
{
    using detail::ldpow;
    using detail::require;
    static const std::vector<BoundFormula> reg = {
        {"exsum-I", "d >= 3, H >= 1",
         [](const BoundParams& p) {
             require(p.d >= 3 && p.height() >= 1, "exsum-I", "d >= 3, H >= 1");
             return 3.37L * ldpow(15.01L, p.d * p.d) * ldpow(p.height(), p.d * p.d);
         }},
        {"exsum-ii", "d >= 3, H >= 1",
         [](const BoundParams& p) {
             require(p.d >= 3 && p.height() >= 1, "exsum-ii", "d >= 3, H >= 1");
             const int d = p.d;
             return 1.13L * ldpow(4, d) * ldpow(d, d) * ldpow(2, d * d) * ldpow(p.height(), d * (d - 1));
         }},
        {"exsum-iii", "d >= 3, H >= d*2^(d+1/d)",
         [](const BoundParams& p) {
             require(p.d >= 3 && p.height() >= detail::large_height(p.d), "exsum-iii", "d >= 3, H >= d*2^(d+1/d)");
             return detail::exsum_iii_rhs(p.d, p.height());
         }},
        {"exnorm", "d >= 2, nu != 0, H >= d*2^(d+1/d)*|nu|^(1/d)",
         [](const BoundParams& p) {
             const char* cond = "d >= 2, nu != 0, H >= d*2^(d+1/d)*|nu|^(1/d)";
             require(p.d >= 2 && p.nu != 0, "exnorm", cond);
             const long double a = std::fabs(static_cast<long double>(p.nu));
             const long double H = p.height();
             require(H >= detail::large_height(p.d) * std::pow(a, 1.0L / p.d), "exnorm", cond);
             const long double w = omega(p.nu);
             if (p.d == 2) return (64 * std::sqrt(2 * a) + 8) * H + 2 * w + 2;
             const int d = p.d;
             return 0.0000063L * a * w * d * d * d * ldpow(4, d) * ldpow(15.01L, d * d) * ldpow(H, d * (d - 1) - 1);
         }},
        {"exunits", "d >= 2, H >= d*2^(d+1/d)",
         [](const BoundParams& p) {
             require(p.d >= 2 && p.height() >= detail::large_height(p.d), "exunits", "d >= 2, H >= d*2^(d+1/d)");
             if (p.d == 2) return 128 * std::sqrt(10.0L) * p.height() + 8;
             return detail::exsum_iii_rhs(p.d, p.height());
         }},
        {"allred", "d = 2: T >= 2; d >= 3: T >= 1",
         [](const BoundParams& p) {
             const long double T = p.measure();
             if (p.d == 2) {
                 require(T >= 2, "allred", "d = 2, T >= 2");
                 return 1758 * T * T * std::log(T);
             }
             require(p.d >= 3 && T >= 1, "allred", "d >= 3, T >= 1");
             const long double c = to_ld(c0);
             return 16 * c * c * ldpow(4, p.d) * detail::P_ld(p.d - 1) * ldpow(T, p.d);
         }},
        {"monicred", "d = 2: T >= 2; d >= 3: T >= 1",
         [](const BoundParams& p) {
             const long double T = p.measure();
             if (p.d == 2) {
                 require(T >= 2, "monicred", "d = 2, T >= 2");
                 return 98 * T * std::log(T);
             }
             require(p.d >= 3 && T >= 1, "monicred", "d >= 3, T >= 1");
             const long double c = to_ld(c1);
             return 2 * c * c * ldpow(4, p.d) * detail::P_ld(p.d - 1) * ldpow(T, p.d - 1);
         }},
        {"normsieve", "d >= 2, r != 0, T >= 1",
         [](const BoundParams& p) {
             require(p.d >= 2 && p.r != 0 && p.measure() >= 1, "normsieve", "d >= 2, r != 0, T >= 1");
             const long double w = omega(p.r);
             if (p.d == 2) return w + 1;
             const long double c = to_ld(c2);
             return 0.5L * w * c * c * ldpow(4, p.d) * detail::P_ld(p.d - 1) * ldpow(p.measure(), p.d - 2);
         }},
        {"tracesieve", "d = 2: T >= 1; d = 3: T >= 2; d >= 4: T >= 1",
         [](const BoundParams& p) {
             const long double T = p.measure();
             const long double t = static_cast<long double>(p.t);
             if (p.d == 2) {
                 require(T >= 1, "tracesieve", "d = 2, T >= 1");
                 return 0.5L * std::sqrt(t * t + 4 * T) + 1;
             }
             if (p.d == 3) {
                 require(T >= 2, "tracesieve", "d = 3, T >= 2");
                 return 96 / std::log(2.0L) * T * std::log(T);
             }
             require(p.d >= 4 && T >= 1, "tracesieve", "d >= 4, T >= 1");
             return p.d * ldpow(2, 2 * p.d - 1) * detail::P_ld(p.d - 1) * ldpow(T, p.d - 2);
         }},
    };
    return reg;
}

inline const BoundFormula& find_bound(std::string_view tag)
{
    for (const auto& f : bound_registry())
        if (f.tag == tag) return f;
    throw std::invalid_argument("unknown bound: " + std::string(tag));
}

inline long double explicit_rhs(std::string_view tag, const BoundParams& p) { return find_bound(tag).evaluate(p); }

} // namespace mahler
