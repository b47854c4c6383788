#pragma once

// Factorization over Z by rational roots and numerical root recombination,
// confirmed by exact division.

#include "roots.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahler {

inline constexpr int default_degree_cap = 12;

struct Factorization {
    Integer unit = 1;             // signed content
    std::vector<IntPoly> factors; // primitive, positive leading coefficient, irreducible
};

inline IntPoly expand(const Factorization& f)
{
    IntPoly r(std::vector<Integer>{f.unit});
    for (const auto& g : f.factors) r = r * g;
    return r;
}

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer& v)
{
    Integer a = abs(v);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            small.push_back(d);
            if (d * d != a) large.push_back(a / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// A linear factor s z - r of a primitive p with p(0) != 0, if any.
inline std::optional<IntPoly> rational_root_factor(const IntPoly& p)
{
    const int n = p.length_degree();
    for (const auto& s : positive_divisors(p.coeffs[0]))
        for (const auto& r : positive_divisors(p.coeffs[n]))
            for (int sign : {1, -1}) {
                Integer num = sign * r;
                if (gcd(num, s) != 1) continue;
                if (eval_homogeneous(p, num, s) == 0) return IntPoly(std::vector<Integer>{s, Integer(-num)});
            }
    return std::nullopt;
}

template <class Real>
Integer round_to_integer(const Real& x)
{
    if constexpr (std::is_floating_point_v<Real>) {
        if (std::fabs(x) < 0x1p62L) return Integer(static_cast<long>(x));
        int e = 0;
        long double m = std::frexp(static_cast<long double>(x), &e);
        Integer r(static_cast<long>(std::ldexp(m, 62)));
        mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 62));
        return r;
    } else {
        return Integer(x.template convert_to<mp::cpp_int>().str());
    }
}

enum class SubsetResult { Found, None, NeedPrecision };

// Looks for a factor w_0 prod_{i in S} (z - alpha_i) with integer coefficients
// among subsets of size k_min..n/2.
template <class Real>
SubsetResult subset_factor(const IntPoly& p, int k_min, IntPoly& factor)
{
    const int n = p.length_degree();
    auto ld = aberth(to_real_coeffs<long double>(p));
    std::vector<Cx<Real>> start;
    if constexpr (!std::is_same_v<Real, long double>)
        for (auto& z : ld.z) start.emplace_back(Real(z.re), Real(z.im));
    auto r = [&] {
        if constexpr (std::is_same_v<Real, long double>)
            return ld;
        else
            return aberth(to_real_coeffs<Real>(p), std::move(start));
    }();
    for (const auto& rad : r.radius)
        if (!(rad < std::numeric_limits<Real>::infinity())) return SubsetResult::NeedPrecision;
    {
        auto comp = disk_components(r);
        for (int i = 0; i < n; ++i)
            if (comp[i] != i) return SubsetResult::NeedPrecision;
    }
    const Real eps = real_eps<Real>();
    const Real w0 = from_integer<Real>(p.coeffs[0]);
    using std::abs;
    const Real aw0 = abs(w0);
    bool uncertain = false;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int k = std::popcount(mask);
        if (k < k_min || 2 * k > n) continue;
        // product with centers, and majorant with |z| + r and with |z|
        std::vector<Cx<Real>> c(1, Cx<Real>(Real(1)));
        std::vector<Real> big(1, Real(1)), mag(1, Real(1));
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            Real az = r.z[i].abs();
            Real ar = az + r.radius[i];
            std::vector<Cx<Real>> nc(c.size() + 1, Cx<Real>(Real(0)));
            std::vector<Real> nb(big.size() + 1, Real(0)), nm(mag.size() + 1, Real(0));
            for (std::size_t j = 0; j < c.size(); ++j) {
                nc[j] = nc[j] + c[j];
                nc[j + 1] = nc[j + 1] - c[j] * r.z[i];
                nb[j] += big[j];
                nb[j + 1] += big[j] * ar;
                nm[j] += mag[j];
                nm[j + 1] += mag[j] * az;
            }
            c = std::move(nc);
            big = std::move(nb);
            mag = std::move(nm);
        }
        std::vector<Integer> coeffs(k + 1);
        bool ok = true, unsure = false;
        for (int j = 0; j <= k; ++j) {
            Real err = aw0 * ((big[j] - mag[j]) + Real(16 * n) * eps * big[j]) + Real(4) * eps;
            Real re = c[j].re * w0, im = c[j].im * w0;
            if (abs(im) > err) {
                ok = false;
                break;
            }
            using std::floor;
            Real nearest = floor(re + Real(0.5));
            if (abs(re - nearest) > err) {
                ok = false;
                break;
            }
            if (err >= Real(0.5)) unsure = true;
            coeffs[j] = round_to_integer(nearest);
        }
        if (!ok) continue;
        if (unsure) {
            uncertain = true;
            continue;
        }
        IntPoly g = primitive_part(IntPoly(std::move(coeffs)));
        IntPoly q;
        if (g.length_degree() >= 1 && g.length_degree() < n && divides_exact(p, g, q)) {
            factor = g;
            return SubsetResult::Found;
        }
    }
    return uncertain ? SubsetResult::NeedPrecision : SubsetResult::None;
}

// A proper factor of primitive p (positive lead, p(0) != 0, degree >= 2).
inline std::optional<IntPoly> find_proper_factor(const IntPoly& p)
{
    const int n = p.length_degree();
    {
        auto f = detail::to_q(p);
        auto g = qgcd(f, qderiv(f));
        if (g.size() > 1) return q_to_primitive(g);
    }
    int k_min = 1;
    if (abs(p.coeffs[0]) < 1000000 && abs(p.coeffs[n]) < 1000000) {
        if (auto f = rational_root_factor(p)) return f;
        k_min = 2;
    }
    if (2 * k_min > n) return std::nullopt;
    IntPoly g;
    auto r = subset_factor<long double>(p, k_min, g);
    if (r == SubsetResult::NeedPrecision) r = subset_factor<Float128>(p, k_min, g);
    if (r == SubsetResult::NeedPrecision) r = subset_factor<Float256>(p, k_min, g);
    if (r == SubsetResult::NeedPrecision) r = subset_factor<Float512>(p, k_min, g);
    if (r == SubsetResult::NeedPrecision) throw std::runtime_error("factor_over_Z: precision exhausted");
    if (r == SubsetResult::Found) return g;
    return std::nullopt;
}

inline void factor_primitive(const IntPoly& p, std::vector<IntPoly>& out)
{
    IntPoly q = p;
    while (q.length_degree() > 0 && q.coeffs.back() == 0) {
        q.coeffs.pop_back();
        out.push_back(IntPoly{1, 0});
    }
    if (q.length_degree() < 1) return;
    if (q.length_degree() == 1) {
        out.push_back(q);
        return;
    }
    auto g = find_proper_factor(q);
    if (!g) {
        out.push_back(q);
        return;
    }
    IntPoly h;
    divides_exact(q, *g, h);
    factor_primitive(primitive_part(*g), out);
    factor_primitive(primitive_part(h), out);
}

} // namespace detail

// p = unit * prod factors, each factor primitive and irreducible with
// positive leading coefficient, sorted by degree then coefficients.
inline Factorization factor_over_Z(const IntPoly& poly, int degree_cap = default_degree_cap)
{
    if (poly.is_zero()) throw std::invalid_argument("factor_over_Z: zero polynomial");
    IntPoly p = poly.trimmed();
    if (p.length_degree() < 1) throw std::invalid_argument("factor_over_Z: degree >= 1 required");
    if (p.length_degree() > degree_cap)
        throw std::invalid_argument("factor_over_Z: degree " + std::to_string(p.length_degree()) +
                                    " exceeds the degree cap " + std::to_string(degree_cap));
    Factorization f;
    f.unit = content(p);
    if (p.coeffs[0] < 0) f.unit = -f.unit;
    detail::factor_primitive(primitive_part(p), f.factors);
    std::sort(f.factors.begin(), f.factors.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.length_degree() != b.length_degree()) return a.length_degree() < b.length_degree();
        return a.coeffs < b.coeffs;
    });
    return f;
}

// Primitive (up to sign) with a single irreducible factor of full degree.
inline bool is_irreducible(const IntPoly& poly, int degree_cap = default_degree_cap)
{
    if (poly.is_zero()) throw std::invalid_argument("is_irreducible: zero polynomial");
    IntPoly p = poly.trimmed();
    const int n = p.length_degree();
    if (n < 1) throw std::invalid_argument("is_irreducible: degree >= 1 required");
    if (n > degree_cap)
        throw std::invalid_argument("is_irreducible: degree " + std::to_string(n) + " exceeds the degree cap " +
                                    std::to_string(degree_cap));
    if (content(p) != 1) return false;
    if (n == 1) return true;
    if (p.coeffs[n] == 0) return false;
    return !detail::find_proper_factor(primitive_part(p));
}

// Reducible over Q: a product of two polynomials of positive degree.
inline bool is_reducible_over_Q(const IntPoly& poly, int degree_cap = default_degree_cap)
{
    if (poly.is_zero()) return false;
    IntPoly p = primitive_part(poly);
    if (p.length_degree() < 2) return false;
    return !is_irreducible(p, degree_cap);
}

namespace detail {

inline std::vector<std::int64_t> divisors64(std::int64_t v)
{
    if (v < 0) v = -v;
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            if (d * d != v) out.push_back(v / d);
        }
    return out;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Does r/s annihilate a (degree n, a[0] leading)? Exact when it fits.
inline bool is_rational_root(const std::int64_t* a, int n, std::int64_t r, std::int64_t s)
{
    // quick floating filter, then exact homogeneous evaluation
    long double x = static_cast<long double>(r) / s, v = 0, mag = 0;
    for (int i = 0; i <= n; ++i) {
        v = v * x + a[i];
        mag = mag * std::fabs(x) + std::fabs(static_cast<long double>(a[i]));
    }
    if (std::fabs(v) > 1e-12L * mag + 1e-12L) return false;
    Integer acc = 0, rp = 1;
    std::vector<Integer> spow(n + 1);
    spow[0] = 1;
    for (int i = 1; i <= n; ++i) spow[i] = spow[i - 1] * static_cast<long>(s);
    for (int i = n; i >= 0; --i) {
        acc += Integer(static_cast<long>(a[i])) * rp * spow[i];
        rp *= static_cast<long>(r);
    }
    return acc == 0;
}

} // namespace detail

// Hot-path variant on small coefficient vectors (w_0 first, leading zeros
// allowed). Same answer as is_irreducible on the trimmed polynomial.
inline bool is_irreducible_small(std::span<const std::int64_t> w)
{
    int first = 0;
    const int len = static_cast<int>(w.size());
    while (first < len && w[first] == 0) ++first;
    if (first == len) throw std::invalid_argument("is_irreducible: zero polynomial");
    const std::int64_t* a = w.data() + first;
    const int n = len - 1 - first;
    if (n < 1) throw std::invalid_argument("is_irreducible: degree >= 1 required");
    std::int64_t g = 0;
    for (int i = 0; i <= n; ++i) g = detail::gcd64(g, a[i]);
    if (g != 1) return false;
    if (n == 1) return true;
    if (a[n] == 0) return false;
    if (n > 3) return is_irreducible(IntPoly::from_span(std::span<const std::int64_t>(a, n + 1)));
    auto ds = detail::divisors64(a[0]);
    auto rs = detail::divisors64(a[n]);
    for (auto s : ds)
        for (auto r : rs) {
            if (detail::gcd64(r, s) != 1) continue;
            if (detail::is_rational_root(a, n, r, s) || detail::is_rational_root(a, n, -r, s)) return false;
        }
    return true;
}

inline bool is_reducible_small(std::span<const std::int64_t> w)
{
    int first = 0;
    const int len = static_cast<int>(w.size());
    while (first < len && w[first] == 0) ++first;
    if (first == len || len - 1 - first < 2) return false;
    std::int64_t g = 0;
    for (int i = first; i < len; ++i) g = detail::gcd64(g, w[i]);
    std::vector<std::int64_t> prim(w.begin() + first, w.end());
    for (auto& x : prim) x /= g;
    return !is_irreducible_small(prim);
}

} // namespace mahler
