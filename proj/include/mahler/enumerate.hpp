#pragma once

// Exhaustive enumeration of integer coefficient vectors inside T*U_d, in the
// coefficient box |w_i| <= C(d,i) T. The outermost free coordinate is split
// into chunks; per-chunk results come back in chunk order, so the output
// does not depend on the thread count.

#include "constants.hpp"
#include "factor.hpp"
#include "measure.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace mahler {

enum class DegreeMode { AtMost, Exactly };

struct EnumFilter {
    int d = 1;
    DegreeMode mode = DegreeMode::AtMost;
    std::optional<SliceSpec> slice;
    Rational T{0};
    bool irreducible_only = false;
    bool primitive_only = false;
    bool reducible_only = false;
    bool positive_leading_only = false;

    void validate() const
    {
        if (d < 0) throw std::invalid_argument("enumerate: d >= 0 required");
        if (d > default_degree_cap) throw std::invalid_argument("enumerate: d <= " + std::to_string(default_degree_cap) + " required");
        if (T < 0) throw std::invalid_argument("enumerate: T >= 0 required");
        if (irreducible_only && reducible_only)
            throw std::invalid_argument("enumerate: irreducible_only and reducible_only are exclusive");
        if (slice) {
            if (slice->d != d) throw std::invalid_argument("enumerate: slice degree differs from d");
            slice->validate();
        }
    }
};

struct EnumOptions {
    unsigned threads = 1;
    int chunks = 0; // 0: one chunk per outer value, capped at 64
    double cap = 1e10;
};

class SearchSpaceRefusal : public std::runtime_error {
public:
    explicit SearchSpaceRefusal(double est)
        : std::runtime_error("search space of about " + std::to_string(static_cast<long double>(est)) +
                             " candidates exceeds the cap"),
          estimate(est)
    {
    }
    double estimate;
};

namespace detail {

struct Box {
    int len = 0;                       // d + 1
    std::vector<std::int64_t> value;   // fixed values; free slots are overwritten
    std::vector<int> free_idx;         // free coordinates, outermost first
    std::vector<std::int64_t> bound;   // |w_i| <= bound[i]
    bool empty = false;
};

inline Box make_box(const EnumFilter& f)
{
    Box b;
    b.len = f.d + 1;
    b.value.assign(b.len, 0);
    b.bound.resize(b.len);
    for (int i = 0; i < b.len; ++i) {
        Integer bi = floor_q(f.T * Rational(binomial(f.d, i)));
        if (!fits_i64(bi) || bi > (Integer(1) << 40)) throw SearchSpaceRefusal(to_ld(bi));
        b.bound[i] = bi.get_si();
    }
    std::vector<bool> fixed(b.len, false);
    if (f.slice) {
        for (int i = 0; i < f.slice->m(); ++i) {
            b.value[i] = f.slice->lead[i];
            fixed[i] = true;
        }
        for (int j = 0; j < f.slice->n(); ++j) {
            int i = b.len - f.slice->n() + j;
            b.value[i] = f.slice->trail[j];
            fixed[i] = true;
        }
    }
    for (int i = 0; i < b.len; ++i) {
        if (fixed[i]) {
            std::int64_t v = b.value[i] < 0 ? -b.value[i] : b.value[i];
            if (v > b.bound[i]) b.empty = true;
        } else {
            b.free_idx.push_back(i);
        }
    }
    if (f.mode == DegreeMode::Exactly && fixed[0] && b.value[0] == 0) b.empty = true;
    return b;
}

// Range of the coordinate i, skipping values excluded up front.
inline std::pair<std::int64_t, std::int64_t> coord_range(const EnumFilter& f, const Box& b, int i)
{
    std::int64_t lo = -b.bound[i], hi = b.bound[i];
    if (i == 0 && f.positive_leading_only && f.mode == DegreeMode::Exactly) lo = 1;
    return {lo, hi};
}

inline bool skip_value(const EnumFilter& f, int i, std::int64_t v)
{
    return i == 0 && v == 0 && f.mode == DegreeMode::Exactly;
}

inline bool predicates(const EnumFilter& f, std::span<const std::int64_t> w)
{
    int first = 0;
    const int len = static_cast<int>(w.size());
    while (first < len && w[first] == 0) ++first;
    if (f.positive_leading_only && (first == len || w[first] < 0)) return false;
    if (f.primitive_only || f.irreducible_only || f.reducible_only) {
        if (first == len) return false;
        std::int64_t g = 0;
        for (int i = first; i < len; ++i) g = gcd64(g, w[i]);
        if (f.primitive_only && g != 1) return false;
        if (f.irreducible_only && g != 1) return false;
    }
    return true;
}

inline bool accepts(const EnumFilter& f, const Threshold& th, std::span<const std::int64_t> w)
{
    if (!predicates(f, w)) return false;
    if (compare_measure_fast(w, th) == Comparison::Above) return false;
    if (f.irreducible_only) {
        int first = 0;
        while (w[first] == 0) ++first;
        if (static_cast<int>(w.size()) - 1 - first < 1) return false;
        return is_irreducible_small(w);
    }
    if (f.reducible_only) return is_reducible_small(w);
    return true;
}

} // namespace detail

// Number of candidate vectors in the box; the quantity compared with the cap.
inline double search_space_estimate(const EnumFilter& f)
{
    f.validate();
    auto b = detail::make_box(f);
    if (b.empty) return 0;
    double est = 1;
    for (int i : b.free_idx) {
        auto [lo, hi] = detail::coord_range(f, b, i);
        est *= static_cast<double>(hi - lo + 1);
    }
    return est;
}

// Runs step(acc, w) on every accepted vector, one Acc per chunk, and returns
// the accumulators in chunk order.
template <class Acc, class Step>
std::vector<Acc> scan_chunks(const EnumFilter& f, const EnumOptions& opt, Step step)
{
    f.validate();
    const double est = search_space_estimate(f);
    if (est > opt.cap) throw SearchSpaceRefusal(est);
    const detail::Box box = detail::make_box(f);
    const Threshold th(f.T);
    if (box.empty) return std::vector<Acc>(1);

    if (box.free_idx.empty()) {
        std::vector<Acc> out(1);
        if (detail::accepts(f, th, box.value)) step(out[0], std::span<const std::int64_t>(box.value));
        return out;
    }

    const int outer = box.free_idx[0];
    auto [olo, ohi] = detail::coord_range(f, box, outer);
    const std::int64_t span_len = ohi - olo + 1;
    std::int64_t K = opt.chunks > 0 ? opt.chunks : std::min<std::int64_t>(span_len, 64);
    K = std::max<std::int64_t>(1, std::min(K, span_len));
    std::vector<Acc> out(static_cast<std::size_t>(K));

    auto run_chunk = [&](std::int64_t c) {
        const std::int64_t a = olo + span_len * c / K, b = olo + span_len * (c + 1) / K - 1;
        std::vector<std::int64_t> w = box.value;
        const int nf = static_cast<int>(box.free_idx.size());
        std::vector<std::int64_t> lo(nf), hi(nf);
        for (int j = 0; j < nf; ++j) std::tie(lo[j], hi[j]) = detail::coord_range(f, box, box.free_idx[j]);
        lo[0] = a;
        hi[0] = b;
        for (int j = 0; j < nf; ++j) w[box.free_idx[j]] = lo[j];
        Acc& acc = out[static_cast<std::size_t>(c)];
        if (a > b) return;
        while (true) {
            if (!detail::skip_value(f, box.free_idx[0], w[box.free_idx[0]]) && detail::accepts(f, th, w)) step(acc, std::span<const std::int64_t>(w));
            int j = nf - 1;
            while (j >= 0 && w[box.free_idx[j]] == hi[j]) {
                w[box.free_idx[j]] = lo[j];
                --j;
            }
            if (j < 0) break;
            ++w[box.free_idx[j]];
        }
    };

    const unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(K)));
    if (nt == 1) {
        for (std::int64_t c = 0; c < K; ++c) run_chunk(c);
        return out;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            try {
                for (std::int64_t c; (c = next.fetch_add(1)) < K;) run_chunk(c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& th_ : pool) th_.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// Accepted vectors in lexicographic order of the free coordinates.
inline std::vector<IntPoly> enumerate(const EnumFilter& f, const EnumOptions& opt = {})
{
    auto parts = scan_chunks<std::vector<IntPoly>>(
        f, opt, [](std::vector<IntPoly>& acc, std::span<const std::int64_t> w) { acc.push_back(IntPoly::from_span(w)); });
    std::vector<IntPoly> out;
    for (auto& p : parts)
        for (auto& q : p) out.push_back(std::move(q));
    return out;
}

inline Integer count_matching(const EnumFilter& f, const EnumOptions& opt = {})
{
    auto parts = scan_chunks<long long>(f, opt, [](long long& acc, std::span<const std::int64_t>) { ++acc; });
    Integer total = 0;
    for (long long v : parts) total += Integer(static_cast<long>(v));
    return total;
}

} // namespace mahler
