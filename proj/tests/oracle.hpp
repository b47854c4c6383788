#pragma once

// Independent reference implementations for degree <= 3: Mahler measure from
// companion-matrix eigenvalues, irreducibility from the rational root test,
// and an unpruned scan of the coefficient box.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline constexpr long double tie_tol = 1e-9L;
inline constexpr long double loud_tol = 1e-6L;

// Coefficients w_0 first with leading and trailing zeros removed.
inline Vec core(const Vec& w)
{
    std::size_t a = 0, b = w.size();
    while (a < b && w[a] == 0) ++a;
    while (b > a && w[b - 1] == 0) --b;
    return Vec(w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b));
}

inline std::vector<std::int64_t> divisors(std::int64_t v)
{
    std::vector<std::int64_t> out;
    v = v < 0 ? -v : v;
    for (std::int64_t k = 1; k <= v; ++k)
        if (v % k == 0) out.push_back(k);
    return out;
}

inline __int128 eval_hom(const Vec& w, std::int64_t p, std::int64_t q)
{
    // sum w_i p^(n-i) q^i
    const int n = static_cast<int>(w.size()) - 1;
    __int128 acc = 0;
    for (int i = 0; i <= n; ++i) {
        __int128 t = w[i];
        for (int j = 0; j < n - i; ++j) t *= p;
        for (int j = 0; j < i; ++j) t *= q;
        acc += t;
    }
    return acc;
}

// A rational root p/q in lowest terms, q > 0.
inline std::optional<std::pair<std::int64_t, std::int64_t>> rational_root(const Vec& w)
{
    for (auto q : divisors(w.front()))
        for (auto p0 : divisors(w.back()))
            for (std::int64_t p : {p0, -p0})
                if (std::gcd(p, q) == 1 && eval_hom(w, p, q) == 0) return std::pair{p, q};
    return std::nullopt;
}

// Exact division of w by (q z - p).
inline Vec divide_linear(const Vec& w, std::int64_t p, std::int64_t q)
{
    Vec out;
    __int128 carry = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        __int128 num = w[i] + carry;
        if (num % q != 0) throw std::logic_error("oracle: inexact division");
        __int128 c = num / q;
        out.push_back(static_cast<std::int64_t>(c));
        carry = c * p;
    }
    if (w.back() + carry != 0) throw std::logic_error("oracle: nonzero remainder");
    return out;
}

inline __int128 discriminant(const Vec& w)
{
    if (w.size() == 3) {
        __int128 a = w[0], b = w[1], c = w[2];
        return b * b - 4 * a * c;
    }
    if (w.size() == 4) {
        __int128 a = w[0], b = w[1], c = w[2], d = w[3];
        return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
    }
    return 1;
}

inline long double eigen_measure(const Vec& w)
{
    const int n = static_cast<int>(w.size()) - 1;
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    Mat C = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) C(0, j) = -static_cast<long double>(w[j + 1]) / w[0];
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
    Eigen::EigenSolver<Mat> es(C, false);
    long double m = std::fabs(static_cast<long double>(w[0]));
    for (int i = 0; i < n; ++i) m *= std::max(1.0L, std::abs(es.eigenvalues()[i]));
    return m;
}

// Mahler measure for nominal degree <= 3. Repeated roots of such a
// polynomial are rational, so they are divided out exactly first.
inline long double measure(const Vec& w)
{
    Vec c = core(w);
    if (c.empty()) return 0;
    if (c.size() > 4) throw std::invalid_argument("oracle: degree <= 3 only");
    long double scale = 1;
    while (c.size() >= 3 && discriminant(c) == 0) {
        auto r = rational_root(c);
        if (!r) throw std::logic_error("oracle: repeated root is not rational");
        scale *= static_cast<long double>(std::max(std::abs(r->first), r->second));
        c = divide_linear(c, r->first, r->second);
    }
    if (c.size() == 1) return scale * std::fabs(static_cast<long double>(c[0]));
    if (c.size() == 2)
        return scale * static_cast<long double>(std::max(std::abs(c[0]), std::abs(c[1])));
    return scale * eigen_measure(c);
}

struct Classified {
    bool inside = false;
    bool loud = false; // relative gap to T in (tie_tol, loud_tol)
};

inline Classified classify(const Vec& w, long double T)
{
    const long double m = measure(w);
    const long double rel = T > 0 ? std::fabs(m - T) / T : std::fabs(m - T);
    Classified c;
    c.inside = m <= T || rel <= tie_tol;
    c.loud = rel > tie_tol && rel < loud_tol;
    return c;
}

// Irreducible over Z: primitive, degree >= 1, and for degree 2 or 3 no
// rational root.
inline bool irreducible(const Vec& w)
{
    Vec c = core(w);
    std::size_t lead = 0;
    while (lead < w.size() && w[lead] == 0) ++lead;
    if (lead == w.size()) return false;
    std::int64_t g = 0;
    for (auto v : w) g = std::gcd(g, v);
    if (g != 1) return false;
    const std::size_t deg = w.size() - 1 - lead;
    if (deg == 0) return false;
    if (deg == 1) return true;
    if (c.size() != deg + 1) return false; // z divides
    if (deg > 3) throw std::invalid_argument("oracle: degree <= 3 only");
    return !rational_root(c);
}

inline std::int64_t binom(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Visits every integer vector of the box |w_i| <= floor(C(d,i) T) whose fixed
// coordinates match lead and trail.
inline void scan_box(int d, long double T, const Vec& lead, const Vec& trail, const std::function<void(const Vec&)>& f)
{
    std::vector<std::int64_t> lo(d + 1), hi(d + 1);
    for (int i = 0; i <= d; ++i) {
        auto b = static_cast<std::int64_t>(std::floor(binom(d, i) * T + 1e-9L));
        lo[i] = -b;
        hi[i] = b;
    }
    for (std::size_t i = 0; i < lead.size(); ++i) lo[i] = hi[i] = lead[i];
    for (std::size_t j = 0; j < trail.size(); ++j) lo[d + 1 - trail.size() + j] = hi[d + 1 - trail.size() + j] = trail[j];
    for (int i = 0; i <= d; ++i)
        if (lo[i] > hi[i] || std::abs(lo[i]) > static_cast<std::int64_t>(std::floor(binom(d, i) * T + 1e-9L)))
            return;
    Vec w(lo);
    while (true) {
        f(w);
        int i = d;
        while (i >= 0 && w[i] == hi[i]) {
            w[i] = lo[i];
            --i;
        }
        if (i < 0) return;
        ++w[i];
    }
}

} // namespace oracle
