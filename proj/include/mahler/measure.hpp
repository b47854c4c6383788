#pragma once

// Certified Mahler measure and exact comparison against rational thresholds.

#include "roots.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mahler {

enum class Comparison { Below, Equal, Above };

inline const char* to_string(Comparison c)
{
    switch (c) {
    case Comparison::Below: return "Below";
    case Comparison::Equal: return "Equal";
    default: return "Above";
    }
}

struct MeasureCertificate {
    long double lower = 0;
    long double upper = 0;
    std::optional<Rational> exact_hit;
    int precision_bits = 64;
};

class UndecidedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A rational threshold with cached approximations for the hot path.
struct Threshold {
    Rational T;
    long double lo = 0, hi = 0; // lo <= T <= hi
    bool small = false;         // num and den below 2^62
    __int128 num = 0, den = 1;
    bool integral = false;

    Threshold() = default;
    explicit Threshold(const Rational& t) : T(t)
    {
        if (T < 0) throw std::invalid_argument("threshold must be nonnegative");
        long double v = to_ld(T);
        const long double u = std::numeric_limits<long double>::epsilon();
        lo = v * (1 - 8 * u);
        hi = v * (1 + 8 * u);
        integral = T.get_den() == 1;
        if (mpz_sizeinbase(T.get_num_mpz_t(), 2) < 62 && mpz_sizeinbase(T.get_den_mpz_t(), 2) < 62) {
            small = true;
            num = T.get_num().get_si();
            den = T.get_den().get_si();
        }
    }
};

inline std::int64_t small_binom(int n, int i)
{
    static const auto table = [] {
        std::array<std::array<std::int64_t, 64>, 64> t{};
        for (int a = 0; a < 64; ++a)
            for (int b = 0; b <= a; ++b) t[a][b] = binom64(a, b);
        return t;
    }();
    return table[n][i];
}

// ---------------------------------------------------------------- bounds

// ||w||_inf / C(d, floor(d/2)), with d = dimension - 1.
inline double measure_lower_bound(const CoeffVector& w)
{
    int d = w.dimension() - 1;
    double m = 0;
    for (double x : w.entries) m = std::max(m, std::fabs(x));
    return m / static_cast<double>(binom64(d, d / 2));
}

// sqrt(d+1) ||w||_inf.
inline double measure_upper_bound(const CoeffVector& w)
{
    double m = 0;
    for (double x : w.entries) m = std::max(m, std::fabs(x));
    return std::sqrt(static_cast<double>(w.dimension())) * m;
}

// max(|w_0|, |w_d|) after removing leading and trailing zeros.
inline Integer measure_lower_bound_exact(const IntPoly& p)
{
    if (p.is_zero()) return 0;
    IntPoly q = p.trimmed();
    std::size_t last = q.coeffs.size() - 1;
    while (q.coeffs[last] == 0) --last;
    return std::max(abs(q.coeffs[0]), abs(q.coeffs[last]));
}

// ------------------------------------------------------------- brackets

template <class Real>
struct Bracket {
    Real lower{0}, upper{0};
    bool valid = false;
    bool exact = false; // every root certainly in the closed unit disk
    int k_out = 0;      // roots certainly outside the closed unit disk
    int k_amb = 0;      // roots whose disks meet the unit circle
};

template <class Real>
void accumulate_bracket(const RootApprox<Real>& r, int multiplicity, Bracket<Real>& b)
{
    const Real eps = real_eps<Real>();
    const Real down = Real(1) - 4 * eps, up = Real(1) + 4 * eps;
    for (const auto& rad : r.radius)
        if (!(rad < std::numeric_limits<Real>::infinity())) {
            b.valid = false;
            return;
        }
    auto comp = disk_components(r);
    const int n = static_cast<int>(r.z.size());
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (seen[comp[i]]) continue;
        seen[comp[i]] = true;
        int m = 0;
        Real lo = std::numeric_limits<Real>::infinity(), hi = 0;
        for (int j = 0; j < n; ++j) {
            if (comp[j] != comp[i]) continue;
            ++m;
            Real a = r.z[j].abs();
            Real l = (a - r.radius[j]) * down, h = (a + r.radius[j]) * up;
            if (l < lo) lo = l;
            if (h > hi) hi = h;
        }
        m *= multiplicity;
        if (hi <= 1) continue;
        if (lo > 1) {
            b.k_out += m;
            for (int t = 0; t < m; ++t) {
                b.lower *= lo * down;
                b.upper *= hi * up;
            }
        } else {
            b.k_amb += m;
            for (int t = 0; t < m; ++t) b.upper *= hi * up;
        }
    }
    b.exact = b.k_out == 0 && b.k_amb == 0;
}

template <class Real>
Bracket<Real> start_bracket(const Integer& lead)
{
    Bracket<Real> b;
    b.valid = true;
    Real l = from_integer<Real>(abs(lead));
    const Real eps = real_eps<Real>();
    b.lower = l * (Real(1) - 2 * eps);
    b.upper = l * (Real(1) + 2 * eps);
    return b;
}

// --------------------------------------------------------------- ties

namespace detail {

// Q_k(x) = prod_{|S| = k} (x - w_0 prod_{i in S} alpha_i), exactly, from
// Newton power sums of the roots of p (p(0) != 0).
inline std::vector<IntPoly> subset_product_polys(const IntPoly& p, int k_lo, int k_hi)
{
    const int n = p.length_degree();
    const Integer& w0 = p.coeffs[0];
    int maxN = 0;
    for (int k = k_lo; k <= k_hi; ++k) maxN = std::max<int>(maxN, static_cast<int>(binom64(n, k)));
    const int J = std::max(1, maxN * std::max(1, k_hi));
    std::vector<Rational> e(n + 1);
    for (int i = 0; i <= n; ++i) {
        e[i] = Rational(p.coeffs[i]) / Rational(w0);
        if (i % 2) e[i] = -e[i];
    }
    std::vector<Rational> s(J + 1);
    s[0] = n;
    for (int j = 1; j <= J; ++j) {
        Rational acc = 0;
        for (int i = 1; i <= std::min(j - 1, n); ++i) {
            if (i % 2)
                acc += e[i] * s[j - i];
            else
                acc -= e[i] * s[j - i];
        }
        if (j <= n) {
            if (j % 2)
                acc += j * e[j];
            else
                acc -= j * e[j];
        }
        s[j] = acc;
    }
    auto newton_e = [](const std::vector<Rational>& pw, int upto) {
        // pw[1..upto] power sums -> elementary symmetric E_0..E_upto
        std::vector<Rational> E(upto + 1);
        E[0] = 1;
        for (int r = 1; r <= upto; ++r) {
            Rational acc = 0;
            for (int i = 1; i <= r; ++i) {
                if (i % 2)
                    acc += E[r - i] * pw[i];
                else
                    acc -= E[r - i] * pw[i];
            }
            E[r] = acc / r;
        }
        return E;
    };
    std::vector<IntPoly> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        const int N = static_cast<int>(binom64(n, k));
        std::vector<Rational> P(N + 1);
        Rational w0pow = 1;
        for (int j = 1; j <= N; ++j) {
            w0pow *= w0;
            std::vector<Rational> pw(k + 1);
            for (int m = 1; m <= k; ++m) pw[m] = s[j * m];
            P[j] = w0pow * newton_e(pw, k)[k];
        }
        auto C = newton_e(P, N);
        std::vector<Integer> q(N + 1);
        for (int r = 0; r <= N; ++r) {
            if (C[r].get_den() != 1) throw std::logic_error("subset product polynomial not integral");
            q[r] = (r % 2) ? Integer(-C[r].get_num()) : C[r].get_num();
        }
        out.emplace_back(std::move(q));
    }
    return out;
}

inline IntPoly negate_arg(const IntPoly& q)
{
    IntPoly r = q;
    int n = r.length_degree();
    for (int i = 0; i <= n; ++i)
        if ((n - i) % 2) r.coeffs[i] = -r.coeffs[i];
    return r;
}

// Coefficients of f(y + t), ascending in y.
inline std::vector<Integer> taylor_shift_ascending(const IntPoly& f, const Integer& t)
{
    int n = f.length_degree();
    std::vector<Integer> c(f.coeffs.rbegin(), f.coeffs.rend()); // ascending in x
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) c[j] += t * c[j + 1];
    return c;
}

} // namespace detail

struct TieInfo {
    bool candidate = false; // T is among the possible values of mu
    Rational rho;           // if mu != T then |mu - T| >= rho
};

// Exact tie oracle for integer T, given the certified range [k_lo, k_hi]
// for the number of roots outside the closed unit disk.
inline TieInfo tie_oracle(const IntPoly& p, int k_lo, int k_hi, const Integer& T)
{
    TieInfo info;
    auto qs = detail::subset_product_polys(p, k_lo, k_hi);
    IntPoly G{1};
    for (const auto& q : qs) {
        IntPoly qm = detail::negate_arg(q);
        if (eval_homogeneous(q, T, 1) == 0 || eval_homogeneous(qm, T, 1) == 0) info.candidate = true;
        G = G * q * qm;
    }
    auto f = detail::taylor_shift_ascending(G, T);
    std::size_t j0 = 0;
    while (j0 < f.size() && f[j0] == 0) ++j0;
    Integer mx = 0;
    for (std::size_t j = j0 + 1; j < f.size(); ++j) mx = std::max(mx, Integer(abs(f[j])));
    Integer a = abs(f[j0]);
    info.rho = Rational(a, a + mx);
    info.rho.canonicalize();
    return info;
}

// ------------------------------------------------------------ comparison

namespace detail {

inline std::optional<Comparison> exact_compare(const Integer& v, const Rational& T)
{
    int c = cmp(Rational(v), T);
    return c < 0 ? Comparison::Below : (c == 0 ? Comparison::Equal : Comparison::Above);
}

template <class Real>
std::optional<Comparison> decide(const Bracket<Real>& b, const Integer& lead, const Threshold& t,
                                 const std::optional<TieInfo>& tie)
{
    if (!b.valid) return std::nullopt;
    if (b.exact) return exact_compare(abs(lead), t.T);
    const Real eps = real_eps<Real>();
    Real Tr = from_rational<Real>(t.T);
    if (b.upper < Tr * (Real(1) - 4 * eps)) return Comparison::Below;
    if (b.lower > Tr * (Real(1) + 4 * eps)) return Comparison::Above;
    if (tie && tie->candidate) {
        Real rho = from_rational<Real>(tie->rho) * (Real(1) - 8 * eps);
        if (b.lower > Tr - rho && b.upper < Tr + rho) return Comparison::Equal;
    }
    return std::nullopt;
}

template <class Real>
Bracket<Real> bracket_sqf(const Integer& lead, const std::vector<std::pair<IntPoly, int>>& sqf,
                          const std::vector<std::vector<Cx<long double>>>& starts)
{
    Bracket<Real> b = start_bracket<Real>(lead);
    for (std::size_t f = 0; f < sqf.size(); ++f) {
        std::vector<Cx<Real>> st;
        for (const auto& z : starts[f]) st.emplace_back(Real(z.re), Real(z.im));
        auto r = aberth(to_real_coeffs<Real>(sqf[f].first), std::move(st));
        accumulate_bracket(r, sqf[f].second, b);
        if (!b.valid) break;
    }
    return b;
}

// p trimmed, p(0) != 0, degree >= 1.
inline Comparison certified_compare(const IntPoly& p, const Threshold& t)
{
    const Integer& lead = p.coeffs[0];
    std::optional<TieInfo> tie;
    {
        auto r = aberth(to_real_coeffs<long double>(p));
        Bracket<long double> b = start_bracket<long double>(lead);
        accumulate_bracket(r, 1, b);
        if (auto c = decide(b, lead, t, tie)) return *c;
    }
    auto sqf = squarefree_decomposition(p);
    std::vector<std::vector<Cx<long double>>> starts;
    for (const auto& [f, m] : sqf) starts.push_back(aberth(to_real_coeffs<long double>(f)).z);

    auto step = [&](auto tag) -> std::optional<Comparison> {
        using Real = decltype(tag);
        Bracket<Real> b = bracket_sqf<Real>(lead, sqf, starts);
        if (auto c = decide(b, lead, t, tie)) return c;
        if (b.valid && !tie && t.integral)
            tie = tie_oracle(p, b.k_out, b.k_out + b.k_amb, t.T.get_num());
        return decide(b, lead, t, tie);
    };
    if (auto c = step(0.0L)) return *c;
    if (auto c = step(Float128())) return *c;
    if (auto c = step(Float256())) return *c;
    if (auto c = step(Float512())) return *c;
    if (auto c = step(Float1024())) return *c;
    if (auto c = step(Float2048())) return *c;
    throw UndecidedError("measure comparison undecided at 2048 bits for " +
                         [&] {
                             std::ostringstream os;
                             os << p;
                             return os.str();
                         }());
}

// Exact screens shared by every path. p trimmed with p(0) != 0, degree >= 1.
inline std::optional<Comparison> exact_screens(const IntPoly& p, const Rational& T)
{
    const int n = p.length_degree();
    if (Rational(abs(p.coeffs[0])) > T || Rational(abs(p.coeffs[n])) > T) return Comparison::Above;
    Integer sq = 0;
    for (int i = 0; i <= n; ++i) {
        if (Rational(abs(p.coeffs[i])) > T * Rational(binomial(n, i))) return Comparison::Above;
        sq += p.coeffs[i] * p.coeffs[i];
    }
    // mu < ||p||_2 unless p is a monomial
    if (Rational(sq) <= T * T) return Comparison::Below;
    return std::nullopt;
}

inline IntPoly strip_zero_roots(IntPoly p)
{
    while (p.length_degree() > 0 && p.coeffs.back() == 0) p.coeffs.pop_back();
    return p;
}

} // namespace detail

// Exact three-way comparison of mu(p) with T.
inline Comparison compare_measure(const IntPoly& poly, const Threshold& t)
{
    if (poly.is_zero()) return t.T == 0 ? Comparison::Equal : Comparison::Below;
    IntPoly p = detail::strip_zero_roots(poly.trimmed());
    if (p.length_degree() == 0) return *detail::exact_compare(abs(p.coeffs[0]), t.T);
    if (auto c = detail::exact_screens(p, t.T)) return *c;
    return detail::certified_compare(p, t);
}

inline Comparison compare_measure(const IntPoly& p, const Rational& T) { return compare_measure(p, Threshold(T)); }

namespace detail {

template <class Real>
MeasureCertificate certificate_at(const IntPoly& p)
{
    MeasureCertificate c;
    c.precision_bits = std::numeric_limits<Real>::digits;
    auto sqf = squarefree_decomposition(p);
    std::vector<std::vector<Cx<long double>>> starts;
    for (const auto& [f, m] : sqf) starts.push_back(aberth(to_real_coeffs<long double>(f)).z);
    auto b = bracket_sqf<Real>(p.coeffs[0], sqf, starts);
    if (!b.valid) {
        c.lower = 0;
        c.upper = std::numeric_limits<long double>::infinity();
        return c;
    }
    if (b.exact) {
        c.exact_hit = Rational(abs(p.coeffs[0]));
        c.lower = c.upper = to_ld(Integer(abs(p.coeffs[0])));
        return c;
    }
    const long double u = std::numeric_limits<long double>::epsilon();
    c.lower = to_long_double(b.lower) * (1 - 2 * u);
    c.upper = to_long_double(b.upper) * (1 + 2 * u);
    return c;
}

} // namespace detail

// Certified enclosure of mu(p). With a threshold, ties are settled exactly and
// reported through exact_hit.
inline MeasureCertificate mahler_measure(const IntPoly& poly, std::optional<Rational> threshold = std::nullopt,
                                         int precision_bits = 64)
{
    MeasureCertificate c;
    if (poly.is_zero()) {
        c.exact_hit = Rational(0);
        return c;
    }
    IntPoly p = detail::strip_zero_roots(poly.trimmed());
    if (p.length_degree() == 0) {
        c.exact_hit = Rational(abs(p.coeffs[0]));
        c.lower = c.upper = to_ld(Integer(abs(p.coeffs[0])));
        return c;
    }
    if (precision_bits <= 64)
        c = detail::certificate_at<long double>(p);
    else if (precision_bits <= 128)
        c = detail::certificate_at<Float128>(p);
    else if (precision_bits <= 256)
        c = detail::certificate_at<Float256>(p);
    else
        c = detail::certificate_at<Float512>(p);
    if (threshold && !c.exact_hit && compare_measure(p, *threshold) == Comparison::Equal) {
        c.exact_hit = *threshold;
        c.lower = c.upper = to_ld(*threshold);
    }
    return c;
}

// --------------------------------------------------------------- hot path

namespace detail {

// One Graeffe step on ascending int128 coefficients: roots get squared.
inline void graeffe(const __int128* c, int n, __int128* out)
{
    for (int m = 0; m <= n; ++m) {
        __int128 acc = 0;
        int two_m = 2 * m;
        for (int i = std::max(0, two_m - n); i <= std::min(n, two_m); ++i) {
            __int128 term = c[i] * c[two_m - i];
            if ((two_m - i) % 2) acc -= term;
            else acc += term;
        }
        out[m] = (n % 2) ? -acc : acc;
    }
}

} // namespace detail

// Exact comparison for small integer coefficient vectors (|w_i| < 2^31),
// w_0 first. Falls back to the general path when the screens and the
// long double bracket cannot decide.
inline Comparison compare_measure_fast(std::span<const std::int64_t> w, const Threshold& t)
{
    int first = 0, last = static_cast<int>(w.size()) - 1;
    while (first <= last && w[first] == 0) ++first;
    if (first > last) return t.T == 0 ? Comparison::Equal : Comparison::Below;
    while (w[last] == 0) --last;
    const int n = last - first;
    const std::int64_t* a = w.data() + first;
    std::int64_t amax = 0;
    for (int i = 0; i <= n; ++i) amax = std::max<std::int64_t>(amax, a[i] < 0 ? -a[i] : a[i]);
    if (!t.small || n > 15 || amax >= (std::int64_t(1) << 31)) return compare_measure(IntPoly::from_span(w), t);

    auto cmp_int = [&](__int128 v) { // sign of v - T, exact
        __int128 l = v * t.den;
        return l < t.num ? -1 : (l == t.num ? 0 : 1);
    };
    if (n == 0) {
        int s = cmp_int(amax);
        return s < 0 ? Comparison::Below : (s == 0 ? Comparison::Equal : Comparison::Above);
    }
    auto absv = [](std::int64_t x) -> __int128 { return x < 0 ? -x : x; };
    if (cmp_int(absv(a[0])) > 0 || cmp_int(absv(a[n])) > 0) return Comparison::Above;
    long double l1 = 0;
    for (int i = 0; i <= n; ++i) {
        if (absv(a[i]) * t.den > __int128(small_binom(n, i)) * t.num) return Comparison::Above;
        l1 += static_cast<long double>(absv(a[i]));
    }

    // Graeffe screens: mu^{2^k} = mu(q_k), with q_k exact.
    const long double u = std::numeric_limits<long double>::epsilon();
    __int128 c[2][16];
    for (int i = 0; i <= n; ++i) c[0][i] = a[n - i];
    long double Tlo = t.lo, Thi = t.hi;
    int cur = 0;
    for (int k = 0; k <= 3; ++k) {
        if (k > 0) {
            if (!(l1 * l1 < 0x1p120L) || n > 15) break;
            detail::graeffe(c[cur], n, c[1 - cur]);
            cur = 1 - cur;
            l1 = l1 * l1;
            Tlo = Tlo * Tlo * (1 - 4 * u);
            Thi = Thi * Thi * (1 + 4 * u);
        }
        long double sq = 0;
        for (int i = 0; i <= n; ++i) {
            long double q = static_cast<long double>(c[cur][i] < 0 ? -c[cur][i] : c[cur][i]);
            if (k > 0 && q > static_cast<long double>(small_binom(n, i)) * Thi * (1 + 64 * u))
                return Comparison::Above;
            sq += q * q;
        }
        if (sq * (1 + 64 * u) < Tlo * Tlo) return Comparison::Below;
    }

    // long double bracket straight from the roots
    std::vector<long double> coeffs(a, a + n + 1);
    auto r = aberth(coeffs);
    Bracket<long double> b = start_bracket<long double>(Integer(static_cast<long>(a[0])));
    accumulate_bracket(r, 1, b);
    if (b.valid) {
        if (b.exact) {
            int s = cmp_int(absv(a[0]));
            return s < 0 ? Comparison::Below : (s == 0 ? Comparison::Equal : Comparison::Above);
        }
        if (b.upper < t.lo * (1 - 4 * u)) return Comparison::Below;
        if (b.lower > t.hi * (1 + 4 * u)) return Comparison::Above;
    }
    IntPoly p;
    p.coeffs.reserve(n + 1);
    for (int i = 0; i <= n; ++i) p.coeffs.emplace_back(static_cast<long>(a[i]));
    return detail::certified_compare(p, t);
}

// Approximate measure of a real coefficient vector (long double roots).
inline long double approx_measure(std::span<const double> w)
{
    std::size_t first = 0, last = w.size();
    while (first < last && w[first] == 0) ++first;
    if (first == last) return 0;
    while (w[last - 1] == 0) --last;
    std::vector<long double> a(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(last));
    long double m = std::fabs(a[0]);
    if (a.size() == 1) return m;
    auto r = aberth(a);
    for (const auto& z : r.z) m *= std::max(1.0L, z.abs());
    return m;
}

inline long double approx_measure(const CoeffVector& w) { return approx_measure(std::span<const double>(w.entries)); }

// T = H^d and back.
inline Rational height_to_measure(const Rational& H, int d)
{
    if (d < 1) throw std::invalid_argument("height_relation: d >= 1 required");
    if (H < 1) throw std::invalid_argument("height_relation: H >= 1 required");
    return rpow(H, static_cast<unsigned long>(d));
}

inline double height_to_measure(double H, int d)
{
    if (d < 1 || H < 1) throw std::invalid_argument("height_relation: H >= 1 and d >= 1 required");
    return std::pow(H, d);
}

inline double measure_to_height(double T, int d)
{
    if (d < 1 || T < 1) throw std::invalid_argument("height_relation: T >= 1 and d >= 1 required");
    return std::pow(T, 1.0 / d);
}

} // namespace mahler
