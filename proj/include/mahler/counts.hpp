#pragma once

// Exact counts of integer polynomials and algebraic numbers, each paired with
// its main term and, inside the stated regime, an explicit error bound.

#include "bounds.hpp"
#include "enumerate.hpp"
#include "roots.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mahler {

struct CountReport {
    std::string cls;          // count family
    int d = 0;
    std::string params;       // e.g. "lead=1;trail=-1"
    std::optional<Rational> H; // exact when the height was given
    Rational T;
    Integer count;
    long double main_term = 0;
    std::optional<long double> error_bound;
    std::string theorem_tag;
    std::optional<bool> within_bound;
    std::string note; // why no bound applies, when it does not
    double seconds = 0;

    void settle()
    {
        if (error_bound) within_bound = std::fabs(to_ld(count) - main_term) <= *error_bound;
        else within_bound.reset();
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string join(const std::vector<std::int64_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

inline std::string slice_params(const SliceSpec& s) { return "lead=" + join(s.lead) + ";trail=" + join(s.trail); }

inline long double Tld(const Rational& T) { return to_ld(T); }

inline long double pow_ld(long double b, long double e) { return std::pow(b, e); }

// Applies a registry bound; outside its regime the report keeps no bound
// and records the hypothesis instead.
inline void apply_bound(CountReport& r, const std::string& tag, const BoundParams& p)
{
    r.theorem_tag = tag;
    try {
        r.error_bound = explicit_rhs(tag, p);
    } catch (const RegimeViolation& e) {
        r.error_bound.reset();
        r.note = "regime not met: " + e.condition;
    }
}

} // namespace detail

// M(<=d, T): all integer polynomials of degree at most d, zero included.
inline CountReport count_M_atmost(int d, const Rational& T, const EnumOptions& opt = {})
{
    if (d < 1) throw std::invalid_argument("count_M_atmost: d >= 1 required");
    detail::Stopwatch sw;
    EnumFilter f;
    f.d = d;
    f.T = T;
    CountReport r;
    r.cls = "M_atmost";
    r.d = d;
    r.T = T;
    r.count = count_matching(f, opt);
    const long double t = detail::Tld(T);
    r.main_term = to_ld(V(d)) * detail::pow_ld(t, d + 1);
    r.theorem_tag = "genpolycount";
    if (T >= 1) r.error_bound = to_ld(kappa0(d)) * detail::pow_ld(t, d);
    else r.note = "regime not met: T >= 1";
    r.settle();
    r.seconds = sw.seconds();
    return r;
}

// M^1(<=d, T): primitive nonzero polynomials of degree at most d.
inline Integer count_primitive_atmost(int d, const Rational& T, const EnumOptions& opt = {})
{
    EnumFilter f;
    f.d = d;
    f.T = T;
    f.primitive_only = true;
    return count_matching(f, opt);
}

// Monic polynomials of degree exactly d.
inline CountReport count_M1(int d, const Rational& T, const EnumOptions& opt = {})
{
    if (d < 1) throw std::invalid_argument("count_M1: d >= 1 required");
    detail::Stopwatch sw;
    EnumFilter f;
    f.d = d;
    f.T = T;
    f.mode = DegreeMode::Exactly;
    f.slice = SliceSpec{d, {1}, {}};
    CountReport r;
    r.cls = "monic";
    r.d = d;
    r.T = T;
    r.params = "lead=1";
    r.count = count_matching(f, opt);
    r.main_term = p_poly(d)(static_cast<double>(detail::Tld(T)));
    r.theorem_tag = "moniccount";
    if (d >= 2 && T >= 1) r.error_bound = to_ld(kappa1(d)) * detail::pow_ld(detail::Tld(T), d - 1);
    else r.note = "regime not met: d >= 2, T >= 1";
    r.settle();
    r.seconds = sw.seconds();
    return r;
}

// Polynomials with the slice's fixed leading and trailing coefficients.
inline CountReport count_slice(const SliceSpec& s, const Rational& T, const EnumOptions& opt = {})
{
    s.validate();
    if (s.m() + s.n() < 1 || s.g() < 0) throw std::invalid_argument("count_slice: 0 < m+n <= d required");
    detail::Stopwatch sw;
    EnumFilter f;
    f.d = s.d;
    f.T = T;
    f.slice = s;
    CountReport r;
    r.cls = "slice";
    r.d = s.d;
    r.T = T;
    r.params = detail::slice_params(s);
    r.count = count_matching(f, opt);
    const long double t = detail::Tld(T);
    const int g = s.g();
    r.main_term = to_ld(V(g)) * detail::pow_ld(t, g + 1);
    r.theorem_tag = "slicecount";
    if (s.sup_norm() > 0 && T >= k1_donut(s))
        r.error_bound = static_cast<long double>(kappa_slice(s)) * detail::pow_ld(t, g + 1 - 1.0L / s.d);
    else
        r.note = "regime not met: T >= k1";
    r.settle();
    r.seconds = sw.seconds();
    return r;
}

enum class ReducibleClass { All, Monic, Norm, Trace, NormTrace };

// Reducible polynomials of degree exactly d in one of the sieve classes.
// Norm fixes the constant coefficient r, Trace fixes the second coefficient t.
inline CountReport count_reducible(ReducibleClass cls, int d, const Rational& T, long long r_fixed = 0,
                                   long long t_fixed = 0, const EnumOptions& opt = {})
{
    if (d < 2) throw std::invalid_argument("count_reducible: d >= 2 required");
    detail::Stopwatch sw;
    EnumFilter f;
    f.d = d;
    f.T = T;
    f.mode = DegreeMode::Exactly;
    f.reducible_only = true;
    CountReport r;
    r.d = d;
    r.T = T;
    BoundParams bp;
    bp.d = d;
    bp.T = static_cast<double>(detail::Tld(T));
    bp.r = r_fixed;
    bp.t = t_fixed;
    std::string tag;
    switch (cls) {
    case ReducibleClass::All:
        r.cls = "reducible";
        tag = "allred";
        break;
    case ReducibleClass::Monic:
        r.cls = "reducible_monic";
        f.slice = SliceSpec{d, {1}, {}};
        tag = "monicred";
        break;
    case ReducibleClass::Norm:
        if (r_fixed == 0) throw std::invalid_argument("count_reducible: r != 0 required");
        r.cls = "reducible_norm";
        f.slice = SliceSpec{d, {1}, {r_fixed}};
        tag = "normsieve";
        break;
    case ReducibleClass::Trace:
        r.cls = "reducible_trace";
        f.slice = SliceSpec{d, {1, t_fixed}, {}};
        tag = "tracesieve";
        break;
    case ReducibleClass::NormTrace:
        if (d < 3) throw std::invalid_argument("count_reducible: d >= 3 required");
        if (r_fixed == 0) throw std::invalid_argument("count_reducible: r != 0 required");
        r.cls = "reducible_norm_trace";
        f.slice = SliceSpec{d, {1, t_fixed}, {r_fixed}};
        tag = "ntsieve";
        break;
    }
    if (f.slice) r.params = detail::slice_params(*f.slice);
    r.count = count_matching(f, opt);
    r.main_term = 0;
    if (cls == ReducibleClass::NormTrace) {
        r.theorem_tag = tag;
        r.note = "non-explicit: O(T^(d-3))";
    } else {
        detail::apply_bound(r, tag, bp);
    }
    r.settle();
    r.seconds = sw.seconds();
    return r;
}

struct MoebiusResult {
    int d = 0;
    long long T = 0;
    Integer lhs_sum, rhs_sum;   // M(<=d,T) - 1 and sum_n M^1(<=d, T/n)
    Integer lhs_inv, rhs_inv;   // M^1(<=d,T) and sum_n mu(n)(M(<=d,T/n) - 1)
    bool pass() const { return lhs_sum == rhs_sum && lhs_inv == rhs_inv; }
};

inline int moebius_mu(long long n)
{
    int mu = 1;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    return n > 1 ? -mu : mu;
}

inline MoebiusResult moebius_check(int d, long long T, const EnumOptions& opt = {})
{
    if (d < 1 || T < 1) throw std::invalid_argument("moebius_check: d >= 1, T >= 1 required");
    MoebiusResult res;
    res.d = d;
    res.T = T;
    for (long long n = 1; n <= T; ++n) {
        Rational t(static_cast<long>(T), static_cast<long>(n));
        t.canonicalize();
        EnumFilter all;
        all.d = d;
        all.T = t;
        const Integer M = count_matching(all, opt);
        const Integer M1 = count_primitive_atmost(d, t, opt);
        if (n == 1) {
            res.lhs_sum = M - 1;
            res.lhs_inv = M1;
        }
        res.rhs_sum += M1;
        res.rhs_inv += moebius_mu(n) * (M - 1);
    }
    return res;
}

enum class AlgebraicClass { Numbers, Integers, Units, Norm, Trace, NormTrace };

inline const char* to_string(AlgebraicClass c)
{
    switch (c) {
    case AlgebraicClass::Numbers: return "numbers";
    case AlgebraicClass::Integers: return "integers";
    case AlgebraicClass::Units: return "units";
    case AlgebraicClass::Norm: return "norm";
    case AlgebraicClass::Trace: return "trace";
    default: return "norm_trace";
    }
}

struct AlgebraicQuery {
    AlgebraicClass cls = AlgebraicClass::Numbers;
    int d = 2;
    long long nu = 0;
    long long tau = 0;
};

// Algebraic numbers of degree d with mu(minimal polynomial) <= T, i.e. of
// height at most T^(1/d). Each minimal polynomial contributes d numbers.
inline CountReport count_algebraic(const AlgebraicQuery& q, const Rational& T, const EnumOptions& opt = {},
                                   std::optional<Rational> H = std::nullopt)
{
    const int d = q.d;
    const char* name = to_string(q.cls);
    if (q.cls == AlgebraicClass::Numbers ? d < 1 : d < 2)
        throw std::invalid_argument(std::string(name) + ": d >= " + (q.cls == AlgebraicClass::Numbers ? "1" : "2") +
                                    " required");
    if (q.cls == AlgebraicClass::NormTrace && d < 3) throw std::invalid_argument("norm_trace: d >= 3 required");
    if ((q.cls == AlgebraicClass::Norm || q.cls == AlgebraicClass::NormTrace) && q.nu == 0)
        throw std::invalid_argument(std::string(name) + ": nu != 0 required");
    if (T < 1) throw std::invalid_argument(std::string(name) + ": H >= 1 required");

    detail::Stopwatch sw;
    const long long sgn_nu = d % 2 ? -q.nu : q.nu; // r = (-1)^d nu
    std::vector<SliceSpec> slices;
    EnumFilter f;
    f.d = d;
    f.T = T;
    f.mode = DegreeMode::Exactly;
    f.irreducible_only = true;
    switch (q.cls) {
    case AlgebraicClass::Numbers:
        f.positive_leading_only = true;
        break;
    case AlgebraicClass::Integers: slices.push_back({d, {1}, {}}); break;
    case AlgebraicClass::Units:
        slices.push_back({d, {1}, {1}});
        slices.push_back({d, {1}, {-1}});
        break;
    case AlgebraicClass::Norm: slices.push_back({d, {1}, {sgn_nu}}); break;
    case AlgebraicClass::Trace: slices.push_back({d, {1, -q.tau}, {}}); break;
    case AlgebraicClass::NormTrace: slices.push_back({d, {1, -q.tau}, {sgn_nu}}); break;
    }

    CountReport r;
    r.cls = name;
    r.d = d;
    r.T = T;
    r.H = H;
    if (q.cls == AlgebraicClass::Norm || q.cls == AlgebraicClass::NormTrace) r.params += "nu=" + std::to_string(q.nu);
    if (q.cls == AlgebraicClass::Trace || q.cls == AlgebraicClass::NormTrace)
        r.params += std::string(r.params.empty() ? "" : ";") + "tau=" + std::to_string(q.tau);
    Integer polys = 0;
    if (slices.empty()) {
        polys = count_matching(f, opt);
    } else {
        for (const auto& s : slices) {
            f.slice = s;
            polys += count_matching(f, opt);
        }
    }
    r.count = polys * d;

    const long double t = detail::Tld(T);
    BoundParams bp;
    bp.d = d;
    bp.T = static_cast<double>(t);
    bp.H = H ? static_cast<double>(to_ld(*H)) : std::pow(static_cast<double>(t), 1.0 / d);
    bp.nu = q.nu;
    const auto Vld = [](int g) { return to_ld(V(g)); };
    switch (q.cls) {
    case AlgebraicClass::Numbers:
        r.main_term = d * Vld(d) / (2 * zeta_int(d + 1)) * detail::pow_ld(t, d + 1);
        detail::apply_bound(r, "exsum-I", bp);
        break;
    case AlgebraicClass::Integers:
        r.main_term = d * p_poly(d)(static_cast<double>(t));
        detail::apply_bound(r, "exsum-ii", bp);
        break;
    case AlgebraicClass::Units:
        r.main_term = 2 * d * Vld(d - 2) * detail::pow_ld(t, d - 1);
        detail::apply_bound(r, "exunits", bp);
        break;
    case AlgebraicClass::Norm:
        r.main_term = d * Vld(d - 2) * detail::pow_ld(t, d - 1);
        detail::apply_bound(r, "exnorm", bp);
        break;
    case AlgebraicClass::Trace:
        r.main_term = d * Vld(d - 2) * detail::pow_ld(t, d - 1);
        r.theorem_tag = "tracecor";
        r.note = "non-explicit: error O(H^(d(d-2))) up to log";
        break;
    case AlgebraicClass::NormTrace:
        r.main_term = d * Vld(d - 3) * detail::pow_ld(t, d - 2);
        r.theorem_tag = "normtracecor";
        r.note = "non-explicit: error O(H^(d(d-3)))";
        break;
    }
    r.settle();
    r.seconds = sw.seconds();
    return r;
}

struct CensusPoint {
    int d = 0;
    long double height = 0; // mu(f)^(1/d)
    std::complex<long double> root;
    IntPoly poly;
    long double measure = 0;
};

// All algebraic numbers of degree 1..d_max and height at most H.
inline std::vector<CensusPoint> census(int d_max, const Rational& H, const EnumOptions& opt = {})
{
    if (d_max < 1 || d_max > default_degree_cap)
        throw std::invalid_argument("census: 1 <= d_max <= " + std::to_string(default_degree_cap) + " required");
    if (H < 1) throw std::invalid_argument("census: H >= 1 required");
    std::vector<CensusPoint> out;
    for (int d = 1; d <= d_max; ++d) {
        EnumFilter f;
        f.d = d;
        f.T = rpow(H, static_cast<unsigned long>(d));
        f.mode = DegreeMode::Exactly;
        f.irreducible_only = true;
        f.positive_leading_only = true;
        for (const auto& p : enumerate(f, opt)) {
            auto rs = roots(p);
            const auto cert = mahler_measure(p);
            const long double mu = (cert.lower + cert.upper) / 2;
            for (const auto& z : rs.roots) out.push_back({d, std::pow(mu, 1.0L / d), z, p, mu});
        }
    }
    return out;
}

// ----------------------------------------------------------------- CSV

inline std::string fmt_ld(long double v, int digits = 17)
{
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

inline void write_counts_header(std::ostream& os)
{
    os << "class,d,params,H,T,count,main_term,error_bound,within_bound,seconds\n";
}

inline void write_counts_row(std::ostream& os, const CountReport& r, bool timing = true)
{
    std::string H = r.H ? fmt_ld(to_ld(*r.H)) : fmt_ld(std::pow(to_ld(r.T), 1.0L / r.d));
    os << r.cls << ',' << r.d << ',' << r.params << ',' << H << ',' << fmt_ld(to_ld(r.T)) << ',' << r.count.get_str()
       << ',' << fmt_ld(r.main_term) << ',' << (r.error_bound ? fmt_ld(*r.error_bound) : "") << ','
       << (r.within_bound ? (*r.within_bound ? "true" : "false") : "") << ',' << (timing ? fmt_ld(r.seconds, 6) : "0")
       << '\n';
}

inline void write_census_header(std::ostream& os) { os << "degree,height,re,im,coeffs,measure\n"; }

inline void write_census_row(std::ostream& os, const CensusPoint& p)
{
    std::string coeffs;
    for (std::size_t i = 0; i < p.poly.coeffs.size(); ++i) coeffs += (i ? ";" : "") + p.poly.coeffs[i].get_str();
    os << p.d << ',' << fmt_ld(p.height) << ',' << fmt_ld(p.root.real()) << ',' << fmt_ld(p.root.imag()) << ','
       << coeffs << ',' << fmt_ld(p.measure) << '\n';
}

} // namespace mahler
