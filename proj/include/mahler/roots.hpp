#pragma once

// Simultaneous root iteration (Aberth-Ehrlich) templated on the real type,
// with a-posteriori inclusion radii.

#include "int_poly.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace mahler {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using BinFloat = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

using Float128 = BinFloat<128>;
using Float256 = BinFloat<256>;
using Float512 = BinFloat<512>;
using Float1024 = BinFloat<1024>;
using Float2048 = BinFloat<2048>;

template <class Real>
struct Cx {
    Real re{0}, im{0};

    Cx() = default;
    Cx(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(const Real& s) const { return {re * s, im * s}; }
    Cx operator/(const Cx& o) const
    {
        // scaled to avoid overflow for large magnitudes
        using std::abs;
        if (abs(o.re) >= abs(o.im)) {
            Real t = o.im / o.re, den = o.re + o.im * t;
            return {(re + im * t) / den, (im - re * t) / den};
        }
        Real t = o.re / o.im, den = o.re * t + o.im;
        return {(re * t + im) / den, (im * t - re) / den};
    }
    Real norm() const { return re * re + im * im; }
    Real abs() const
    {
        using std::sqrt;
        return sqrt(norm());
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

template <class Real>
Real real_eps()
{
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real from_integer(const Integer& z)
{
    if constexpr (std::is_floating_point_v<Real>)
        return static_cast<Real>(to_ld(z));
    else
        return Real(z.get_str());
}

template <class Real>
Real from_rational(const Rational& q)
{
    return from_integer<Real>(q.get_num()) / from_integer<Real>(q.get_den());
}

template <class Real>
long double to_long_double(const Real& x)
{
    if constexpr (std::is_floating_point_v<Real>)
        return static_cast<long double>(x);
    else
        return x.template convert_to<long double>();
}

template <class Real>
struct RootApprox {
    std::vector<Cx<Real>> z;
    std::vector<Real> radius; // inclusion radii; +inf when unavailable
    bool converged = false;
    int iterations = 0;
};

namespace detail {

// Horner at a complex point; returns p(z), p'(z), and sum |a_k||z|^{n-k}.
template <class Real>
void horner(const std::vector<Real>& a, const Cx<Real>& z, Cx<Real>& p, Cx<Real>& dp, Real& absum)
{
    p = Cx<Real>(a[0]);
    dp = Cx<Real>(Real(0));
    using std::abs;
    Real az = z.abs();
    absum = abs(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        dp = dp * z + p;
        p = p * z + Cx<Real>(a[k]);
        absum = absum * az + abs(a[k]);
    }
}

} // namespace detail

// Initial points on a circle of radius 2 max |a_i/a_0|^{1/i}.
template <class Real>
std::vector<Cx<Real>> initial_points(const std::vector<Real>& a)
{
    int n = static_cast<int>(a.size()) - 1;
    long double a0 = std::fabs(to_long_double(a[0]));
    long double r = 0;
    for (int i = 1; i <= n; ++i) {
        long double ai = std::fabs(to_long_double(a[i]));
        if (ai > 0) r = std::max(r, std::pow(ai / a0, 1.0L / i));
    }
    r = std::max(2 * r, 1e-3L);
    std::vector<Cx<Real>> z(n);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int k = 0; k < n; ++k) {
        long double th = 2 * pi * k / n + 0.7L;
        z[k] = Cx<Real>(Real(r * std::cos(th)), Real(r * std::sin(th)));
    }
    return z;
}

// Coefficients a[0..n], leading first, a[0] != 0 and a[n] != 0, n >= 1.
template <class Real>
RootApprox<Real> aberth(const std::vector<Real>& a, std::vector<Cx<Real>> start = {}, int max_iter = 0)
{
    const int n = static_cast<int>(a.size()) - 1;
    RootApprox<Real> out;
    out.z = start.size() == static_cast<std::size_t>(n) ? std::move(start) : initial_points(a);
    const Real eps = real_eps<Real>();
    if (max_iter <= 0) max_iter = 60 + 10 * std::numeric_limits<Real>::digits / 16;
    Cx<Real> p, dp;
    Real absum;
    int it = 0;
    for (; it < max_iter; ++it) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            detail::horner(a, out.z[i], p, dp, absum);
            if (p.is_zero()) continue;
            // stop moving roots whose residual is at rounding level
            if (p.abs() <= 4 * n * eps * absum) continue;
            done = false;
            Cx<Real> ratio = dp.is_zero() ? Cx<Real>(Real(1)) : p / dp;
            Cx<Real> s(Real(0));
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Cx<Real> diff = out.z[i] - out.z[j];
                if (!diff.is_zero()) s = s + Cx<Real>(Real(1)) / diff;
            }
            Cx<Real> den = Cx<Real>(Real(1)) - ratio * s;
            Cx<Real> w = den.is_zero() ? ratio : ratio / den;
            out.z[i] = out.z[i] - w;
        }
        if (done) break;
    }
    out.iterations = it;
    out.converged = it < max_iter;

    // inclusion radii: n |p(z_i)| / |a_0 prod_{j != i} (z_i - z_j)|
    out.radius.assign(n, std::numeric_limits<Real>::infinity());
    using std::abs;
    const Real slack = Real(1) + Real(8 * n + 16) * eps;
    for (int i = 0; i < n; ++i) {
        detail::horner(a, out.z[i], p, dp, absum);
        Real perr = p.abs() + Real(8 * n + 8) * eps * absum;
        Real den = abs(a[0]);
        for (int j = 0; j < n; ++j)
            if (j != i) den *= (out.z[i] - out.z[j]).abs();
        if (den == 0) continue;
        out.radius[i] = Real(n) * perr / den * slack;
    }
    return out;
}

// Connected components of the union of inclusion disks.
template <class Real>
std::vector<int> disk_components(const RootApprox<Real>& r)
{
    const int n = static_cast<int>(r.z.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((r.z[i] - r.z[j]).abs() <= r.radius[i] + r.radius[j]) parent[find(i)] = find(j);
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = find(i);
    return comp;
}

template <class Real>
std::vector<Real> to_real_coeffs(const IntPoly& p)
{
    std::vector<Real> a;
    a.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) a.push_back(from_integer<Real>(c));
    return a;
}

// Complex roots with error radii; centers rounded to long double.
struct RootSet {
    std::vector<std::complex<long double>> roots;
    std::vector<long double> radii;
    bool certified = false;
    int precision_bits = 64;
};

namespace detail {

// Per-root radii: disjoint disks keep their radius, overlapping clusters get
// the radius of a disk covering the whole cluster.
template <class Real>
void append_roots(const RootApprox<Real>& r, int multiplicity, RootSet& out)
{
    auto comp = disk_components(r);
    const int n = static_cast<int>(r.z.size());
    const long double ulp = 4 * std::numeric_limits<long double>::epsilon();
    for (int i = 0; i < n; ++i) {
        Real rad = r.radius[i];
        for (int j = 0; j < n; ++j)
            if (j != i && comp[j] == comp[i]) {
                Real reach = (r.z[i] - r.z[j]).abs() + r.radius[j];
                if (reach > rad) rad = reach;
            }
        std::complex<long double> c(to_long_double(r.z[i].re), to_long_double(r.z[i].im));
        long double rl = to_long_double(rad) * (1 + ulp) + ulp * std::abs(c);
        if (!std::isfinite(rl)) rl = std::numeric_limits<long double>::infinity();
        for (int m = 0; m < multiplicity; ++m) {
            out.roots.push_back(c);
            out.radii.push_back(rl);
        }
    }
}

template <class Real>
void roots_at(const std::vector<std::pair<IntPoly, int>>& sqf, RootSet& out)
{
    for (const auto& [f, mult] : sqf) {
        if (f.length_degree() < 1) continue;
        auto ld = aberth(to_real_coeffs<long double>(f));
        std::vector<Cx<Real>> start;
        if constexpr (!std::is_same_v<Real, long double>)
            for (auto& z : ld.z) start.emplace_back(Real(z.re), Real(z.im));
        auto r = aberth(to_real_coeffs<Real>(f), std::move(start));
        append_roots(r, mult, out);
    }
}

} // namespace detail

// All complex roots with multiplicity. Exact zero roots get radius 0.
// Square-free parts are solved separately so multiple roots are accurate.
inline RootSet roots(const IntPoly& poly, int precision_bits = 64)
{
    if (poly.is_zero()) throw std::invalid_argument("roots: zero polynomial");
    IntPoly p = poly.trimmed();
    RootSet out;
    out.precision_bits = precision_bits;
    int zeros = 0;
    while (p.length_degree() > 0 && p.coeffs.back() == 0) {
        p.coeffs.pop_back();
        ++zeros;
    }
    for (int i = 0; i < zeros; ++i) {
        out.roots.emplace_back(0.0L, 0.0L);
        out.radii.push_back(0.0L);
    }
    if (p.length_degree() >= 1) {
        auto sqf = squarefree_decomposition(p);
        if (precision_bits <= 64)
            detail::roots_at<long double>(sqf, out);
        else if (precision_bits <= 128)
            detail::roots_at<Float128>(sqf, out);
        else if (precision_bits <= 256)
            detail::roots_at<Float256>(sqf, out);
        else
            detail::roots_at<Float512>(sqf, out);
    }
    out.certified = std::all_of(out.radii.begin(), out.radii.end(), [](long double r) { return std::isfinite(r); });
    return out;
}

// Roots of a real coefficient vector (long double, not certified).
inline RootSet roots(const CoeffVector& w)
{
    for (double x : w.entries)
        if (!std::isfinite(x)) throw std::invalid_argument("roots: non-finite coefficient");
    std::size_t lz = 0;
    while (lz < w.entries.size() && w.entries[lz] == 0) ++lz;
    if (lz == w.entries.size()) throw std::invalid_argument("roots: zero polynomial");
    std::vector<long double> a(w.entries.begin() + static_cast<long>(lz), w.entries.end());
    RootSet out;
    while (a.size() > 1 && a.back() == 0) {
        a.pop_back();
        out.roots.emplace_back(0.0L, 0.0L);
        out.radii.push_back(0.0L);
    }
    if (a.size() > 1) detail::append_roots(aberth(a), 1, out);
    out.certified = std::all_of(out.radii.begin(), out.radii.end(), [](long double r) { return std::isfinite(r); });
    return out;
}

} // namespace mahler
