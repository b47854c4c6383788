#pragma once

// Pruned enumeration against the unpruned oracle scan over a grid of degrees,
// thresholds, slices and filters.

#include "mahler/enumerate.hpp"

#include "oracle.hpp"

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace equivalence {

struct Outcome {
    long cases = 0;
    long discrepancies = 0;
    long loud = 0; // oracle measures too close to T to classify
    std::string first_failure;
};

inline bool oracle_accepts(const mahler::EnumFilter& f, const oracle::Vec& w)
{
    std::size_t first = 0;
    while (first < w.size() && w[first] == 0) ++first;
    const bool zero = first == w.size();
    if (f.mode == mahler::DegreeMode::Exactly && w[0] == 0) return false;
    if (f.positive_leading_only && (zero || w[first] < 0)) return false;
    std::int64_t g = 0;
    for (auto v : w) g = std::gcd(g, v);
    if (f.primitive_only && g != 1) return false;
    if (f.irreducible_only && !oracle::irreducible(w)) return false;
    if (f.reducible_only) {
        if (zero || w.size() - 1 - first < 2) return false;
        oracle::Vec prim(w);
        for (auto& v : prim) v /= g;
        if (oracle::irreducible(prim)) return false;
    }
    return true;
}

inline void compare_one(const mahler::EnumFilter& f, Outcome& out)
{
    ++out.cases;
    const long double T = mahler::to_ld(f.T);
    std::vector<oracle::Vec> want;
    oracle::Vec lead, trail;
    if (f.slice) {
        lead = f.slice->lead;
        trail = f.slice->trail;
    }
    oracle::scan_box(f.d, T, lead, trail, [&](const oracle::Vec& w) {
        if (!oracle_accepts(f, w)) return;
        const auto c = oracle::classify(w, T);
        out.loud += c.loud;
        if (c.inside) want.push_back(w);
    });
    std::vector<oracle::Vec> got;
    for (const auto& p : mahler::enumerate(f)) {
        oracle::Vec w;
        for (const auto& c : p.coeffs) w.push_back(c.get_si());
        got.push_back(std::move(w));
    }
    if (got != want) {
        ++out.discrepancies;
        if (out.first_failure.empty()) {
            std::ostringstream os;
            os << "d=" << f.d << " T=" << f.T.get_str() << " mode=" << (f.mode == mahler::DegreeMode::Exactly ? "exact" : "atmost")
               << " lead=" << lead.size() << " trail=" << trail.size() << " flags=" << f.irreducible_only
               << f.primitive_only << f.reducible_only << f.positive_leading_only << " pruned=" << got.size()
               << " oracle=" << want.size();
            out.first_failure = os.str();
        }
    }
}

inline void values(int len, int bound, std::vector<oracle::Vec>& out)
{
    oracle::Vec v(len, -bound);
    if (len == 0) {
        out.push_back(v);
        return;
    }
    while (true) {
        out.push_back(v);
        int i = len - 1;
        while (i >= 0 && v[i] == bound) v[i--] = -bound;
        if (i < 0) return;
        ++v[i];
    }
}

// Degrees 1..d_max, integer T in 0..T_max, every slice with m + n <= 2 and
// fixed values in [-2, 2], both degree modes, and the predicate filters on the
// unsliced body.
inline Outcome run_grid(int d_max, int T_max)
{
    Outcome out;
    for (int d = 1; d <= d_max; ++d)
        for (int T = 0; T <= T_max; ++T) {
            for (int m = 0; m <= 2; ++m)
                for (int n = 0; m + n <= 2; ++n) {
                    if (m + n > d + 1) continue;
                    std::vector<oracle::Vec> leads, trails;
                    values(m, 2, leads);
                    values(n, 2, trails);
                    for (const auto& l : leads)
                        for (const auto& r : trails)
                            for (auto mode : {mahler::DegreeMode::AtMost, mahler::DegreeMode::Exactly}) {
                                mahler::EnumFilter f;
                                f.d = d;
                                f.T = mahler::Rational(T);
                                f.mode = mode;
                                if (m + n > 0) f.slice = mahler::SliceSpec{d, l, r};
                                compare_one(f, out);
                            }
                }
            for (int flags = 1; flags < 16; ++flags) {
                mahler::EnumFilter f;
                f.d = d;
                f.T = mahler::Rational(T);
                f.irreducible_only = flags & 1;
                f.primitive_only = flags & 2;
                f.reducible_only = flags & 4;
                f.positive_leading_only = flags & 8;
                if (f.irreducible_only && f.reducible_only) continue;
                for (auto mode : {mahler::DegreeMode::AtMost, mahler::DegreeMode::Exactly}) {
                    f.mode = mode;
                    compare_one(f, out);
                }
            }
        }
    return out;
}

} // namespace equivalence
