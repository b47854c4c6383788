#pragma once

// The star body U_d = {w : mu(w) <= 1}: membership, Monte Carlo volumes,
// boundary patches and their Lipschitz constant, the donut band of slices,
// and component counts of axis-parallel lines.

#include "bounds.hpp"
#include "constants.hpp"
#include "measure.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mahler {

struct MCEstimate {
    double mean = 0;
    double stderr_ = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double box_volume = 0;
    std::int64_t hits = 0;
};

namespace detail {

inline void require_finite(std::span<const double> w)
{
    for (double x : w)
        if (!std::isfinite(x)) throw std::invalid_argument("membership: non-finite coordinate");
}

// Decides mu(w) <= T(1 + 1e-12) with cheap screens before the root finder.
inline bool inside(std::span<const double> w, double T)
{
    const int n = static_cast<int>(w.size()) - 1;
    long double sq = 0;
    for (int i = 0; i <= n; ++i) {
        const long double a = std::fabs(w[i]);
        if (a > small_binom(n, i) * static_cast<long double>(T) * (1 + 1e-12L)) return false;
        sq += a * a;
    }
    if (sq <= static_cast<long double>(T) * T) return true;
    return approx_measure(w) <= T * (1 + 1e-12);
}

// Splits [0, n) into fixed chunks and sums f(begin, end) over them.
template <class F>
std::int64_t parallel_sum(std::int64_t n, unsigned threads, F f)
{
    const std::int64_t K = std::max<std::int64_t>(1, std::min<std::int64_t>(n, 256));
    std::vector<std::int64_t> part(static_cast<std::size_t>(K), 0);
    auto run = [&](std::int64_t c) { part[static_cast<std::size_t>(c)] = f(n * c / K, n * (c + 1) / K); };
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(K)));
    if (nt == 1) {
        for (std::int64_t c = 0; c < K; ++c) run(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::int64_t c = t; c < K; c += nt) run(c);
            });
        for (auto& th : pool) th.join();
    }
    std::int64_t s = 0;
    for (auto v : part) s += v;
    return s;
}

// Runs f(i) for i in [0, n) over a fixed round-robin assignment.
template <class F>
void parallel_for(std::int64_t n, unsigned threads, F f)
{
    const unsigned nt = std::max(1u, static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(n, 1))));
    if (nt == 1) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (std::int64_t i = t; i < n; i += nt) f(i);
        });
    for (auto& th : pool) th.join();
}

inline MCEstimate finish(std::int64_t hits, std::int64_t samples, std::uint64_t seed, double box)
{
    MCEstimate e;
    e.hits = hits;
    e.samples = samples;
    e.seed = seed;
    e.box_volume = box;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    e.mean = box * p;
    e.stderr_ = box * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    return e;
}

// Mahler measure of real coefficients with 128-bit roots.
inline long double measure_hp(const std::vector<long double>& w)
{
    std::size_t first = 0, last = w.size();
    while (first < last && w[first] == 0) ++first;
    if (first == last) return 0;
    while (w[last - 1] == 0) --last;
    std::vector<long double> a(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(last));
    long double m = std::fabs(a[0]);
    if (a.size() == 1) return m;
    auto ld = aberth(a);
    std::vector<Cx<Float128>> start;
    for (auto& z : ld.z) start.emplace_back(Float128(z.re), Float128(z.im));
    std::vector<Float128> ah(a.begin(), a.end());
    auto r = aberth(ah, std::move(start));
    Float128 mu = Float128(m);
    for (const auto& z : r.z) {
        Float128 az = z.abs();
        if (az > 1) mu *= az;
    }
    return mu.convert_to<long double>();
}

} // namespace detail

inline bool membership(const CoeffVector& w, double T)
{
    detail::require_finite(w.entries);
    if (w.entries.empty()) throw std::invalid_argument("membership: empty vector");
    return detail::inside(w.entries, T);
}

// vol(T U_d) by uniform sampling of the box |w_i| <= C(d,i) T.
inline MCEstimate mc_volume(int d, double T, std::int64_t samples, std::uint64_t seed, unsigned threads = 1)
{
    if (d < 0) throw std::invalid_argument("mc_volume: d >= 0 required");
    if (!(T > 0)) throw std::invalid_argument("mc_volume: T > 0 required");
    if (samples < 10000) throw std::invalid_argument("mc_volume: samples >= 10^4 required");
    std::vector<double> half(d + 1);
    double box = 1;
    for (int i = 0; i <= d; ++i) {
        half[i] = small_binom(d, i) * T;
        box *= 2 * half[i];
    }
    const CounterRng rng(seed, 1);
    const std::int64_t hits = detail::parallel_sum(samples, threads, [&](std::int64_t a, std::int64_t b) {
        std::vector<double> w(d + 1);
        std::int64_t h = 0;
        for (std::int64_t s = a; s < b; ++s) {
            for (int i = 0; i <= d; ++i)
                w[i] = rng.uniform(static_cast<std::uint64_t>(s) * (d + 1) + i, -half[i], half[i]);
            h += detail::inside(w, T);
        }
        return h;
    });
    return detail::finish(hits, samples, seed, box);
}

// vol_{g+1} of the slice S(T): fixed coordinates inserted, free ones sampled.
inline MCEstimate mc_slice_volume(const SliceSpec& s, double T, std::int64_t samples, std::uint64_t seed,
                                  unsigned threads = 1)
{
    s.validate();
    if (s.g() < 0) throw std::invalid_argument("mc_slice_volume: m + n <= d required");
    if (!(T > 0)) throw std::invalid_argument("mc_slice_volume: T > 0 required");
    if (samples < 10000) throw std::invalid_argument("mc_slice_volume: samples >= 10^4 required");
    const int d = s.d, m = s.m(), g = s.g();
    std::vector<double> base(d + 1, 0), half(g + 1);
    for (int i = 0; i < m; ++i) base[i] = static_cast<double>(s.lead[i]);
    for (int j = 0; j < s.n(); ++j) base[d - s.n() + 1 + j] = static_cast<double>(s.trail[j]);
    double box = 1;
    for (int j = 0; j <= g; ++j) {
        half[j] = small_binom(d, m + j) * T;
        box *= 2 * half[j];
    }
    const CounterRng rng(seed, 2);
    const std::int64_t hits = detail::parallel_sum(samples, threads, [&](std::int64_t a, std::int64_t b) {
        std::vector<double> w = base;
        std::int64_t h = 0;
        for (std::int64_t smp = a; smp < b; ++smp) {
            for (int j = 0; j <= g; ++j)
                w[m + j] = rng.uniform(static_cast<std::uint64_t>(smp) * (g + 1) + j, -half[j], half[j]);
            h += detail::inside(w, T);
        }
        return h;
    });
    return detail::finish(hits, samples, seed, box);
}

// ------------------------------------------------------------- patches

// Plain patch: (z^k + x_1 z^{k-1} + ... + x_k)(y_0 z^{d-k} + ... + y_{d-k-1} z + eps),
// 0 <= k <= d. Monic patch: the second factor is z^{d-k} + y_1 z^{d-k-1} + ... + eps T,
// 0 <= k <= d-1.
struct PatchSpec {
    int d = 1;
    int k = 0;
    int epsilon = 1;
    bool monic = false;
    double T = 1;

    int x_dim() const { return k; }
    int y_dim() const { return monic ? d - k - 1 : d - k; }

    void validate() const
    {
        if (d < 1) throw std::invalid_argument("patch: d >= 1 required");
        if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("patch: epsilon = +-1 required");
        if (k < 0 || k > (monic ? d - 1 : d)) throw std::invalid_argument("patch: k out of range");
        if (monic && !(T > 0)) throw std::invalid_argument("patch: T > 0 required");
    }
};

namespace detail {

inline std::vector<long double> x_factor(const PatchSpec& s, std::span<const double> x)
{
    std::vector<long double> f(s.k + 1);
    f[0] = 1;
    for (int i = 0; i < s.k; ++i) f[i + 1] = x[i];
    return f;
}

inline std::vector<long double> y_factor(const PatchSpec& s, std::span<const double> y)
{
    std::vector<long double> f;
    if (s.monic) {
        f.push_back(1);
        for (double v : y) f.push_back(v);
        f.push_back(s.epsilon * static_cast<long double>(s.T));
    } else {
        for (double v : y) f.push_back(v);
        f.push_back(s.epsilon);
    }
    return f;
}

inline std::vector<long double> poly_mul(const std::vector<long double>& a, const std::vector<long double>& b)
{
    std::vector<long double> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline std::vector<long double> patch_image(const PatchSpec& s, std::span<const double> x, std::span<const double> y)
{
    return poly_mul(x_factor(s, x), y_factor(s, y));
}

} // namespace detail

inline CoeffVector patch_map(const PatchSpec& s, std::span<const double> x, std::span<const double> y)
{
    s.validate();
    if (static_cast<int>(x.size()) != s.x_dim() || static_cast<int>(y.size()) != s.y_dim())
        throw std::invalid_argument("patch_map: dimension mismatch (x needs " + std::to_string(s.x_dim()) +
                                    ", y needs " + std::to_string(s.y_dim()) + ")");
    auto img = detail::patch_image(s, x, y);
    CoeffVector w;
    for (auto v : img) w.entries.push_back(static_cast<double>(v));
    return w;
}

struct PatchSample {
    std::vector<double> x, y;
    CoeffVector image;
    double residual = 0; // |mu(image) - target| / target, target = 1 or T
};

namespace detail {

// All roots of the monic x-factor in the closed unit disk.
inline bool x_accept(const std::vector<long double>& f)
{
    if (f.size() == 1) return true;
    auto r = aberth(f);
    for (const auto& z : r.z)
        if (z.abs() > 1) return false;
    return true;
}

// All roots of the y-factor outside the open unit disk.
inline bool y_accept(const std::vector<long double>& f)
{
    std::size_t first = 0;
    while (first + 1 < f.size() && f[first] == 0) ++first;
    std::vector<long double> a(f.begin() + static_cast<long>(first), f.end());
    if (a.size() == 1) return true;
    auto r = aberth(a);
    for (const auto& z : r.z)
        if (z.abs() < 1) return false;
    return true;
}

class RejectionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejection sample of (x, y) in J x K from the coefficient boxes; the draw
// counter advances through the stream.
inline void draw_patch_params(const PatchSpec& s, const CounterRng& rng, std::uint64_t& counter,
                              std::vector<double>& x, std::vector<double>& y)
{
    const std::int64_t max_tries = 1000000;
    x.assign(s.x_dim(), 0);
    y.assign(s.y_dim(), 0);
    std::int64_t tries = 0;
    // x: monic of degree k, |x_i| <= C(k,i)
    do {
        if (++tries > max_tries) throw RejectionExhausted("sample_patch: rejection rate above 0.9999 for J_k");
        for (int i = 0; i < s.k; ++i) {
            double h = small_binom(s.k, i + 1);
            x[i] = rng.uniform(counter++, -h, h);
        }
    } while (!x_accept(x_factor(s, x)));
    tries = 0;
    // y: reversed factor has its roots in the closed disk, so |y_j| is bounded
    // by the binomial of the reversed position, scaled by |constant|
    const int e = s.monic ? s.d - s.k : s.d - s.k;
    const double c = s.monic ? s.T : 1.0;
    do {
        if (++tries > max_tries) throw RejectionExhausted("sample_patch: rejection rate above 0.9999 for K");
        for (int j = 0; j < s.y_dim(); ++j) {
            const int pos = s.monic ? j + 1 : j; // index in the y-factor
            double h = small_binom(e, e - pos) * c;
            y[j] = rng.uniform(counter++, -h, h);
        }
    } while (!y_accept(y_factor(s, y)));
}

} // namespace detail

inline std::vector<PatchSample> sample_patch(const PatchSpec& s, std::int64_t samples, std::uint64_t seed)
{
    s.validate();
    if (samples < 1) throw std::invalid_argument("sample_patch: samples >= 1 required");
    const CounterRng rng(seed, 3 + static_cast<std::uint64_t>(s.k) * 4 + (s.epsilon > 0 ? 0 : 1) + (s.monic ? 2 : 0));
    std::uint64_t counter = 0;
    std::vector<PatchSample> out;
    const double target = s.monic ? s.T : 1.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        PatchSample p;
        detail::draw_patch_params(s, rng, counter, p.x, p.y);
        auto img = detail::patch_image(s, p.x, p.y);
        for (auto v : img) p.image.entries.push_back(static_cast<double>(v));
        p.residual = static_cast<double>(std::fabs(detail::measure_hp(img) - target) / target);
        out.push_back(std::move(p));
    }
    return out;
}

struct LipschitzResult {
    double patch_ratio = 0; // max |Tb(p1) - Tb(p2)|_inf / (K T |p1 - p2|_inf)
    double cv_ratio = 0;    // max |mu(w1)^(1/d) - mu(w2)^(1/d)| / (2 |w1 - w2|_1^(1/d))
    std::int64_t pairs = 0;
};

inline double lipschitz_K(int d) { return d * static_cast<double>(small_binom(d, d / 2)); }

inline LipschitzResult lipschitz_check(const PatchSpec& s, double T, std::int64_t pairs, std::uint64_t seed)
{
    s.validate();
    if (pairs < 1) throw std::invalid_argument("lipschitz_check: pairs >= 1 required");
    // the estimate concerns the plain map; a monic patch is checked through it
    PatchSpec plain = s;
    plain.monic = false;
    LipschitzResult res;
    res.pairs = pairs;
    const double K = lipschitz_K(s.d);
    const CounterRng rng(seed, 101 + static_cast<std::uint64_t>(s.k));
    std::uint64_t counter = 0;
    std::vector<double> x1, y1, x2, y2;
    for (std::int64_t i = 0; i < pairs; ++i) {
        detail::draw_patch_params(plain, rng, counter, x1, y1);
        detail::draw_patch_params(plain, rng, counter, x2, y2);
        auto b1 = detail::patch_image(plain, x1, y1), b2 = detail::patch_image(plain, x2, y2);
        long double num = 0, den = 0;
        for (std::size_t j = 0; j < b1.size(); ++j) num = std::max(num, std::fabs(b1[j] - b2[j]));
        for (std::size_t j = 0; j < x1.size(); ++j) den = std::max<long double>(den, std::fabs(x1[j] - x2[j]));
        for (std::size_t j = 0; j < y1.size(); ++j) den = std::max<long double>(den, std::fabs(y1[j] - y2[j]));
        if (num > 0) res.patch_ratio = std::max(res.patch_ratio, static_cast<double>(T * num / (K * T * den)));
    }
    // coefficient-vector pairs for the 1/d-power inequality
    const CounterRng cv(seed, 199);
    const int d = s.d;
    std::vector<double> w1(d + 1), w2(d + 1);
    for (std::int64_t i = 0; i < pairs; ++i) {
        const std::uint64_t base = static_cast<std::uint64_t>(i) * 2 * (d + 2);
        const double scale = T * cv.uniform(base);
        for (int j = 0; j <= d; ++j) {
            const double h = small_binom(d, j) * T;
            w1[j] = cv.uniform(base + 1 + j, -h, h);
            w2[j] = (i % 4 == 0) ? 0.0 : w1[j] + scale * cv.uniform(base + d + 2 + j, -1, 1) / (d + 1);
        }
        long double l1 = 0;
        for (int j = 0; j <= d; ++j) l1 += std::fabs(static_cast<long double>(w1[j]) - w2[j]);
        if (l1 == 0) continue;
        const long double m1 = approx_measure(w1), m2 = approx_measure(w2);
        const long double lhs = std::fabs(std::pow(m1, 1.0L / d) - std::pow(m2, 1.0L / d));
        res.cv_ratio = std::max(res.cv_ratio, static_cast<double>(lhs / (2 * std::pow(l1, 1.0L / d))));
    }
    return res;
}

// --------------------------------------------------------------- donut

struct DonutResult {
    bool pass = true;
    double delta = 0;
    std::int64_t samples = 0;
    std::int64_t in_difference = 0;
    std::vector<std::vector<double>> witnesses; // failing points
};

inline DonutResult donut_check(const SliceSpec& s, double T, std::int64_t samples, std::uint64_t seed)
{
    s.validate();
    if (s.m() + s.n() < 1 || s.g() < 0) throw std::invalid_argument("donut_check: 0 < m+n <= d required");
    const double k1 = k1_donut(s).get_d();
    if (T < k1) throw RegimeViolation("donut", "T >= k1 = " + std::to_string(k1));
    DonutResult res;
    res.samples = samples;
    res.delta = delta_T(s, T);
    const int d = s.d, m = s.m(), g = s.g();
    const CounterRng rng(seed, 301);
    std::vector<double> x(g + 1), x0(d + 1), xT(d + 1);
    for (std::int64_t i = 0; i < samples; ++i) {
        const std::uint64_t base = static_cast<std::uint64_t>(i) * (g + 3);
        for (int j = 0; j <= g; ++j) {
            const double h = small_binom(g, j) * (1 + res.delta);
            x[j] = rng.uniform(base + j, -h, h);
        }
        // odd samples are pushed next to the boundary of U_g
        if (i % 2) {
            const long double mu = approx_measure(x);
            if (mu > 0) {
                const double f = (1 + 4e-5 * (rng.uniform(base + g + 1) - 0.5)) / static_cast<double>(mu);
                for (auto& v : x) v *= f;
            }
        }
        std::fill(x0.begin(), x0.end(), 0.0);
        for (int j = 0; j <= g; ++j) x0[m + j] = xT[m + j] = x[j];
        for (int j = 0; j < m; ++j) xT[j] = static_cast<double>(s.lead[j]) / T;
        for (int j = 0; j < s.n(); ++j) xT[d - s.n() + 1 + j] = static_cast<double>(s.trail[j]) / T;
        const long double mu0 = approx_measure(x0), muT = approx_measure(xT);
        if ((mu0 <= 1) == (muT <= 1)) continue;
        ++res.in_difference;
        if (mu0 < 1 - res.delta || mu0 > 1 + res.delta) {
            res.pass = false;
            if (res.witnesses.size() < 8) res.witnesses.push_back(x);
        }
    }
    return res;
}

// ----------------------------------------------------------- line scan

struct LineSpec {
    int N = 1;
    int axis = 0;
    std::vector<double> anchor; // N entries: the coordinates other than axis

    void validate() const
    {
        if (N < 1) throw std::invalid_argument("line: N >= 1 required");
        if (axis < 0 || axis > N) throw std::invalid_argument("line: 0 <= axis <= N required");
        if (static_cast<int>(anchor.size()) != N) throw std::invalid_argument("line: anchor needs N entries");
        detail::require_finite(anchor);
    }
};

struct LineResult {
    int components = 0;
    bool uncertain = false;
    int uncertain_cells = 0;  // uncertified cells away from any detected crossing
    int boundary_slivers = 0; // uncertified cells of the final width touching a crossing
    std::int64_t evaluations = 0;
};

namespace detail {

struct LinePoint {
    long double mu = 0;
    long double gap = 0; // lower bound for min |f(z)| on |z| = 1
    bool in = false;
    bool sampled = false; // gap already includes the circle sample bound
    std::vector<double> w;
};

// mu(w) and a lower bound for |f| on the unit circle: each root contributes
// at least ||alpha| - 1| - radius, roots at zero contribute 1.
inline LinePoint line_point(std::span<const double> w)
{
    LinePoint p;
    p.w.assign(w.begin(), w.end());
    std::size_t first = 0, last = w.size();
    while (first < last && w[first] == 0) ++first;
    if (first == last) return p;
    while (w[last - 1] == 0) --last;
    std::vector<long double> a(w.begin() + static_cast<long>(first), w.begin() + static_cast<long>(last));
    p.mu = p.gap = std::fabs(a[0]);
    if (a.size() == 1) return p;
    auto r = aberth(a);
    for (std::size_t j = 0; j < r.z.size(); ++j) {
        const long double az = r.z[j].abs();
        p.mu *= std::max(1.0L, az);
        const long double rad = j < r.radius.size() && std::isfinite(r.radius[j]) ? r.radius[j] : INFINITY;
        p.gap *= std::max(0.0L, std::fabs(az - 1) - rad - 1e-15L * std::max(1.0L, az));
    }
    return p;
}

inline constexpr long double pi_ld = 3.14159265358979323846264338327950288L;

template <int K>
const std::vector<std::pair<long double, long double>>& unit_circle()
{
    static const auto unit = [] {
        std::vector<std::pair<long double, long double>> u(K);
        for (int s = 0; s < K; ++s) u[s] = {std::cos(2 * pi_ld * s / K), std::sin(2 * pi_ld * s / K)};
        return u;
    }();
    return unit;
}

// Lower bound for min |f| on |z| = 1 from 512 samples and |f'| <= sum j|w_j|.
inline long double circle_min(std::span<const double> w)
{
    constexpr int K = 512;
    const int n = static_cast<int>(w.size()) - 1;
    long double dbound = 0;
    for (int j = 0; j <= n; ++j) dbound += static_cast<long double>(n - j) * std::fabs(w[j]);
    long double lo = INFINITY;
    for (const auto& [c, sn] : unit_circle<K>()) {
        long double re = 0, im = 0;
        for (int j = 0; j <= n; ++j) {
            const long double r2 = re * c - im * sn + w[j];
            im = re * sn + im * c;
            re = r2;
        }
        lo = std::min(lo, re * re + im * im);
    }
    return std::sqrt(lo) * (1 - 1e-15L) - pi_ld / K * dbound;
}

// Bounds for mu(w + delta e_k) over |delta| <= s from root inclusion disks:
// a component of m overlapping disks holds m roots, so it contributes a
// factor between max(1, min |z| - r)^m and max(1, max |z| + r)^m. The moving
// coordinate must not be the leading one; mu is invariant under reversal, so
// the vector is reversed when needed. Returns {0, inf} when no bound applies.
inline std::pair<long double, long double> measure_range(std::span<const double> w, int k, long double s)
{
    const std::pair<long double, long double> none{0, INFINITY};
    std::vector<double> v(w.begin(), w.end());
    const int N = static_cast<int>(v.size()) - 1;
    auto first_nz = [&] {
        int p = 0;
        while (p <= N && v[p] == 0) ++p;
        return p;
    };
    int p = first_nz();
    if (p > N) return none;
    if (k <= p) {
        std::reverse(v.begin(), v.end());
        k = N - k;
        p = first_nz();
        if (k <= p) return none;
    }
    int q = N;
    while (q > k && v[q] == 0) --q;
    std::vector<long double> a(v.begin() + p, v.begin() + q + 1);
    const int n = q - p;
    const long double lead = std::fabs(a[0]);
    if (n == 0) return {lead, lead};
    auto r = aberth(a);
    const int e = q - k; // degree of the moving monomial
    std::vector<long double> rad(n);
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(r.radius[i])) return none;
        long double den = lead;
        for (int j = 0; j < n; ++j)
            if (j != i) den *= (r.z[i] - r.z[j]).abs();
        if (den == 0) return none;
        rad[i] = r.radius[i] + n * s * std::pow(r.z[i].abs(), static_cast<long double>(e)) / den * (1 + 1e-15L);
    }
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((r.z[i] - r.z[j]).abs() <= rad[i] + rad[j]) parent[find(i)] = find(j);
    std::vector<long double> lo(n, INFINITY), hi(n, 0);
    std::vector<int> size(n, 0);
    for (int i = 0; i < n; ++i) {
        const int c = find(i);
        const long double az = r.z[i].abs();
        lo[c] = std::min(lo[c], az - rad[i]);
        hi[c] = std::max(hi[c], az + rad[i]);
        ++size[c];
    }
    long double mlo = lead, mhi = lead;
    for (int c = 0; c < n; ++c) {
        if (!size[c]) continue;
        mlo *= std::pow(std::max(1.0L, lo[c]), static_cast<long double>(size[c]));
        mhi *= std::pow(std::max(1.0L, hi[c]), static_cast<long double>(size[c]));
    }
    return {mlo * (1 - 1e-15L), mhi * (1 + 1e-15L)};
}

} // namespace detail

// Counts maximal intervals of {t : mu(a with t at axis) <= T} over a range
// that contains them. Each evaluated point certifies a radius on which its
// status cannot change, from Jensen's formula
//   |log mu(f + s z^j) - log mu(f)| <= -log(1 - |s|/m),  m = min |f| on |z| = 1,
// or from |mu(w1)^(1/N) - mu(w2)^(1/N)| <= 2|w1 - w2|_1^(1/N). Cells whose
// end radii do not cover them are halved up to refine_depth. Uncertified
// cells left next to a detected crossing are boundary slivers; any other
// uncertified cell, or an exhausted budget, sets the uncertain flag.
inline LineResult line_components(const LineSpec& line, double T, int resolution, int refine_depth)
{
    line.validate();
    if (resolution < 1000) throw std::invalid_argument("line_components: resolution >= 10^3 required");
    if (!(T > 0)) throw std::invalid_argument("line_components: T > 0 required");
    if (refine_depth < 0) throw std::invalid_argument("line_components: refine_depth >= 0 required");
    const int N = line.N;
    std::vector<double> w(N + 1);
    for (int j = 0, a = 0; j <= N; ++j)
        if (j != line.axis) w[j] = line.anchor[a++];
    LineResult res;
    // msup: |w_i| <= C(N,i) mu(w), so the set lies inside this range
    const double R = small_binom(N, line.axis) * T * (1 + 1e-9);
    const long double level = static_cast<long double>(T) * (1 + 1e-12L);
    const long double log_level = std::log(level);
    const long double root_level = std::pow(level, 1.0L / N);
    constexpr long double margin = 1e-15L;
    // coefbound: |t| > C(N,i) T puts the point outside
    const long double axis_cap = static_cast<long double>(small_binom(N, line.axis)) * level;

    auto eval = [&](double t) {
        w[line.axis] = t;
        ++res.evaluations;
        auto p = detail::line_point(w);
        p.in = p.mu <= level;
        return p;
    };
    auto radius = [&](detail::LinePoint& p) {
        long double rho = 0;
        const long double dr = std::fabs(std::pow(p.mu, 1.0L / N) - root_level) - margin;
        if (dr > 0) rho = std::pow(dr / 2, static_cast<long double>(N));
        if (p.gap > 0 && p.mu > 0) {
            const long double dl = std::fabs(std::log(p.mu) - log_level) - margin;
            if (dl > 0) rho = std::max(rho, -p.gap * std::expm1(-dl));
        }
        return rho;
    };
    auto radius_fine = [&](detail::LinePoint& p) {
        if (!p.sampled) {
            p.sampled = true;
            p.gap = std::max(p.gap, detail::circle_min(p.w));
        }
        return radius(p);
    };

    std::vector<double> ts(resolution + 1);
    std::vector<detail::LinePoint> ev(resolution + 1);
    for (int i = 0; i <= resolution; ++i) {
        ts[i] = -R + 2 * R * i / resolution;
        ev[i] = eval(ts[i]);
    }
    const std::int64_t budget = static_cast<std::int64_t>(resolution) * 8;
    std::int64_t spent = 0;

    // number of status changes inside a cell; left/right mark a crossing
    // detected just beyond the corresponding end
    auto refine = [&](auto&& self, double a, double b, detail::LinePoint& ea, detail::LinePoint& eb, int depth,
                      bool left, bool right) -> int {
        if (ea.in != eb.in) return 1;
        const long double width = static_cast<long double>(b) - a;
        if (radius(ea) + radius(eb) >= width) return 0;
        if (radius_fine(ea) + radius_fine(eb) >= width) return 0;
        const double c = a + (b - a) / 2;
        if (!ea.in && std::min(std::fabs(a), std::fabs(b)) > axis_cap && (a > 0) == (b > 0)) return 0;
        if (spent >= budget) {
            res.uncertain = true;
            ++res.uncertain_cells;
            return 0;
        }
        ++spent;
        auto ec = eval(c);
        if (ec.in != ea.in) return 2;
        w[line.axis] = c;
        const auto [lo, hi] = detail::measure_range(w, line.axis, width / 2 * (1 + 1e-12L));
        if (ea.in ? hi <= level : lo > level) return 0;
        if (depth >= refine_depth) {
            if (left || right) {
                ++res.boundary_slivers;
            } else {
                res.uncertain = true;
                ++res.uncertain_cells;
            }
            return 0;
        }
        return self(self, a, c, ea, ec, depth + 1, left, false) + self(self, c, b, ec, eb, depth + 1, false, right);
    };

    int changes = 0;
    for (int i = 0; i < resolution; ++i) {
        const bool left = i > 0 && ev[i - 1].in != ev[i].in;
        const bool right = i + 1 < resolution && ev[i + 1].in != ev[i + 2].in;
        changes += refine(refine, ts[i], ts[i + 1], ev[i], ev[i + 1], 0, left, right);
    }
    res.components = (changes + static_cast<int>(ev.front().in) + static_cast<int>(ev.back().in)) / 2;
    return res;
}

// Line number index of a random family: the anchor comes from a uniform point
// of T U_N with the axis coordinate dropped, the axis cycles through 0..N.
inline LineSpec random_line(int N, double T, std::uint64_t seed, std::uint64_t index)
{
    if (N < 1) throw std::invalid_argument("random_line: N >= 1 required");
    const CounterRng rng(seed ^ splitmix64(index), 401 + static_cast<std::uint64_t>(N));
    std::vector<double> w(N + 1);
    std::uint64_t counter = 0;
    do {
        for (int j = 0; j <= N; ++j) {
            const double h = small_binom(N, j) * T;
            w[j] = rng.uniform(counter++, -h, h);
        }
    } while (approx_measure(w) > T);
    LineSpec line;
    line.N = N;
    line.axis = static_cast<int>(index % static_cast<std::uint64_t>(N + 1));
    for (int j = 0; j <= N; ++j)
        if (j != line.axis) line.anchor.push_back(w[j]);
    return line;
}

// (N+1) 2^(N-1), the bound for the number of components on an axis-parallel line.
inline long long davenport_bound(int N) { return (N + 1) * (1LL << (N - 1)); }

} // namespace mahler
