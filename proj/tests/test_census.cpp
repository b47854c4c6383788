#include "mahler/counts.hpp"
#include "mahler/enumerate.hpp"

#include "equivalence.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace mahler;

namespace {

EnumFilter atmost(int d, long T)
{
    EnumFilter f;
    f.d = d;
    f.T = Rational(T);
    return f;
}

} // namespace

TEST(Enumerate, DegreeOneUnitBall)
{
    auto v = enumerate(atmost(1, 1));
    EXPECT_EQ(v.size(), 9u);
    std::set<std::pair<long, long>> seen;
    for (const auto& p : v) {
        EXPECT_LE(abs(p.coeffs[0]), 1);
        EXPECT_LE(abs(p.coeffs[1]), 1);
        seen.insert({p.coeffs[0].get_si(), p.coeffs[1].get_si()});
    }
    EXPECT_EQ(seen.size(), 9u);
}

TEST(Enumerate, UnitSliceQuadratics)
{
    EnumFilter f;
    f.d = 2;
    f.mode = DegreeMode::Exactly;
    f.slice = SliceSpec{2, {1}, {1}};
    f.T = 1;
    auto v = enumerate(f);
    ASSERT_EQ(v.size(), 5u);
    for (long b = -2; b <= 2; ++b) EXPECT_EQ(v[static_cast<std::size_t>(b + 2)], (IntPoly{1, b, 1}));
}

TEST(Enumerate, ZeroThreshold)
{
    for (int d = 1; d <= 4; ++d) {
        auto v = enumerate(atmost(d, 0));
        ASSERT_EQ(v.size(), 1u);
        EXPECT_TRUE(v[0].is_zero());
        EnumFilter f = atmost(d, 0);
        f.mode = DegreeMode::Exactly;
        EXPECT_TRUE(enumerate(f).empty());
    }
}

TEST(Enumerate, Refusal)
{
    EnumOptions o;
    o.cap = 1e6;
    try {
        count_matching(atmost(4, 10), o);
        FAIL() << "expected refusal";
    } catch (const SearchSpaceRefusal& e) {
        EXPECT_GT(e.estimate, 1e6);
    }
}

TEST(Enumerate, RejectsInconsistentFlags)
{
    EnumFilter f = atmost(2, 2);
    f.irreducible_only = f.reducible_only = true;
    EXPECT_THROW(count_matching(f), std::invalid_argument);
}

TEST(Enumerate, OracleEquivalenceSmall)
{
    const auto r = equivalence::run_grid(2, 4);
    EXPECT_GT(r.cases, 500);
    EXPECT_EQ(r.loud, 0);
    EXPECT_EQ(r.discrepancies, 0) << r.first_failure;
}

TEST(Enumerate, PartitionInvariance)
{
    for (int d = 1; d <= 3; ++d)
        for (long T : {1L, 3L, 5L}) {
            EnumFilter f = atmost(d, T);
            EnumOptions base;
            base.chunks = 1;
            const auto ref = enumerate(f, base);
            for (int k : {2, 4, 8}) {
                EnumOptions o;
                o.chunks = k;
                EXPECT_EQ(enumerate(f, o), ref) << "d=" << d << " T=" << T << " k=" << k;
                o.threads = 4;
                EXPECT_EQ(count_matching(f, o), Integer(static_cast<long>(ref.size())));
            }
        }
}

TEST(Enumerate, ThreadCountInvariance)
{
    EnumFilter f = atmost(3, 4);
    f.irreducible_only = true;
    EnumOptions one, eight;
    eight.threads = 8;
    EXPECT_EQ(enumerate(f, one), enumerate(f, eight));
}

TEST(Enumerate, SignSymmetry)
{
    for (int d = 1; d <= 3; ++d)
        for (long T = 1; T <= 4; ++T) {
            long pos = 0, neg = 0;
            for (const auto& p : enumerate(atmost(d, T))) {
                pos += p.coeffs[0] > 0;
                neg += p.coeffs[0] < 0;
            }
            EXPECT_EQ(pos, neg);
        }
}

TEST(Counts, DegreeOneClosedForm)
{
    for (long T = 0; T <= 12; ++T) EXPECT_EQ(count_M_atmost(1, Rational(T)).count, (2 * T + 1) * (2 * T + 1));
}

TEST(Counts, GeneralExamples)
{
    const auto a = count_M_atmost(1, 1);
    EXPECT_EQ(a.count, 9);
    EXPECT_DOUBLE_EQ(static_cast<double>(a.main_term), 4.0);
    ASSERT_TRUE(a.error_bound);
    EXPECT_DOUBLE_EQ(static_cast<double>(*a.error_bound), 64.0);
    EXPECT_TRUE(*a.within_bound);
    const auto b = count_M_atmost(1, 3);
    EXPECT_EQ(b.count, 49);
    EXPECT_DOUBLE_EQ(static_cast<double>(b.main_term), 36.0);
    EXPECT_GE(count_M_atmost(2, 1).count, 9);
}

TEST(Counts, MonicExamples)
{
    // monic quadratics with all roots in the closed unit disk
    EXPECT_EQ(count_M1(2, 1).count, 9);
    EXPECT_DOUBLE_EQ(static_cast<double>(count_M1(2, 2).main_term), 16.0);
    for (long T = 1; T <= 100; ++T) {
        const auto r = count_M1(2, Rational(T));
        EXPECT_LE(std::fabs(to_ld(r.count) - r.main_term), 96.0L * T) << T;
    }
}

TEST(Counts, SliceExamples)
{
    const auto r = count_slice(SliceSpec{2, {1}, {1}}, 1);
    EXPECT_EQ(r.count, 5);
    EXPECT_DOUBLE_EQ(static_cast<double>(r.main_term), 2.0);
    EXPECT_FALSE(r.error_bound); // T < k1
    EXPECT_FALSE(r.within_bound);
    EXPECT_DOUBLE_EQ(static_cast<double>(count_slice(SliceSpec{2, {1}, {1}}, 7).main_term), 14.0);
    EXPECT_THROW(SliceSpec({3, {1}, {0}}).validate_minimal(), std::invalid_argument);
}

TEST(Counts, ReducibleExamples)
{
    // (z + a)(z + b) with max(|a|,1) max(|b|,1) <= 2, unordered
    long expect = 0;
    for (long a = -2; a <= 2; ++a)
        for (long b = a; b <= 2; ++b)
            if (std::max(std::labs(a), 1L) * std::max(std::labs(b), 1L) <= 2) ++expect;
    EXPECT_EQ(count_reducible(ReducibleClass::Monic, 2, 2).count, expect);

    const auto n = count_reducible(ReducibleClass::Norm, 2, 10, 1);
    EXPECT_LE(n.count, 2);
    EXPECT_TRUE(*n.within_bound);
    const auto t = count_reducible(ReducibleClass::Trace, 2, 4, 0, 0);
    EXPECT_LE(t.count, 3);
    EXPECT_TRUE(*t.within_bound);
    const auto nt = count_reducible(ReducibleClass::NormTrace, 3, 4, 1, 0);
    EXPECT_FALSE(nt.error_bound);
    EXPECT_NE(nt.note.find("non-explicit"), std::string::npos);
}

TEST(Counts, ReducibleMatchesFactorization)
{
    for (long T = 2; T <= 5; ++T) {
        long expect = 0;
        EnumFilter f = atmost(3, T);
        f.mode = DegreeMode::Exactly;
        for (const auto& p : enumerate(f)) expect += is_reducible_over_Q(p);
        EXPECT_EQ(count_reducible(ReducibleClass::All, 3, Rational(T)).count, expect);
    }
}

TEST(Moebius, Examples)
{
    const auto a = moebius_check(1, 1);
    EXPECT_EQ(a.lhs_sum, 8);
    EXPECT_TRUE(a.pass());
    EXPECT_TRUE(moebius_check(2, 3).pass());
    for (int d = 1; d <= 3; ++d) {
        const auto r = moebius_check(d, 1);
        EXPECT_EQ(r.lhs_sum, r.lhs_inv);
        EXPECT_TRUE(r.pass());
    }
}

TEST(Algebraic, Units)
{
    AlgebraicQuery q;
    q.cls = AlgebraicClass::Units;
    q.d = 2;
    const auto r = count_algebraic(q, 3);
    EXPECT_EQ(r.count, 18);
    // oracle: irreducible z^2 + b z + c, c = +-1, mu <= 3
    long polys = 0;
    for (std::int64_t c : {1, -1})
        for (std::int64_t b = -6; b <= 6; ++b) {
            oracle::Vec w{1, b, c};
            if (oracle::irreducible(w) && oracle::classify(w, 3).inside) ++polys;
        }
    EXPECT_EQ(polys, 9);
}

TEST(Algebraic, RationalNumbers)
{
    AlgebraicQuery q;
    q.cls = AlgebraicClass::Numbers;
    q.d = 1;
    EXPECT_EQ(count_algebraic(q, Rational(3, 2)).count, 3);
    EXPECT_EQ(count_algebraic(q, 1).count, 3);
}

TEST(Algebraic, TraceSignConvention)
{
    // z^2 - 2z + c has trace 2
    AlgebraicQuery q;
    q.cls = AlgebraicClass::Trace;
    q.d = 2;
    q.tau = 2;
    EnumFilter f;
    f.d = 2;
    f.T = 5;
    f.mode = DegreeMode::Exactly;
    f.irreducible_only = true;
    f.slice = SliceSpec{2, {1, -2}, {}};
    EXPECT_EQ(count_algebraic(q, 5).count, 2 * count_matching(f));
    for (const auto& p : enumerate(f)) {
        auto rs = roots(p);
        EXPECT_NEAR(static_cast<double>((rs.roots[0] + rs.roots[1]).real()), 2.0, 1e-12);
    }
}

TEST(Algebraic, NormSignConvention)
{
    // cubic of norm 2: constant coefficient -2
    AlgebraicQuery q;
    q.cls = AlgebraicClass::Norm;
    q.d = 3;
    q.nu = 2;
    EnumFilter f;
    f.d = 3;
    f.T = 4;
    f.mode = DegreeMode::Exactly;
    f.irreducible_only = true;
    f.slice = SliceSpec{3, {1}, {-2}};
    EXPECT_EQ(count_algebraic(q, 4).count, 3 * count_matching(f));
    q.nu = 0;
    EXPECT_THROW(count_algebraic(q, 4), std::invalid_argument);
}

TEST(Census, Degree1)
{
    const auto a = census(1, Rational(3, 2));
    ASSERT_EQ(a.size(), 3u);
    for (const auto& p : a) EXPECT_EQ(p.root.imag(), 0);
    EXPECT_EQ(census(1, 1).size(), 3u);
}

TEST(Census, PointsMatchCounts)
{
    const Rational H(3, 2);
    const auto pts = census(3, H);
    Integer total = 0;
    for (int d = 1; d <= 3; ++d) {
        AlgebraicQuery q;
        q.cls = AlgebraicClass::Numbers;
        q.d = d;
        total += count_algebraic(q, rpow(H, d)).count;
    }
    EXPECT_EQ(Integer(static_cast<long>(pts.size())), total);
    for (const auto& p : pts) {
        EXPECT_LE(std::abs(p.root), std::pow(1.5L, static_cast<long double>(p.d)));
        EXPECT_TRUE(is_irreducible(p.poly));
        EXPECT_GT(p.poly.coeffs[0], 0);
        EXPECT_NEAR(static_cast<double>(std::pow(p.height, static_cast<long double>(p.d))), static_cast<double>(p.measure), 1e-9);
    }
}

TEST(Csv, Schemas)
{
    std::ostringstream a, b;
    write_counts_header(a);
    EXPECT_EQ(a.str(), "class,d,params,H,T,count,main_term,error_bound,within_bound,seconds\n");
    write_census_header(b);
    EXPECT_EQ(b.str(), "degree,height,re,im,coeffs,measure\n");
    std::ostringstream c;
    write_census_row(c, census(1, 1)[0]);
    const std::string row = c.str();
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 5);
}
