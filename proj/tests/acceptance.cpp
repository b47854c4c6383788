// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "mahler/constants.hpp"
#include "mahler/verify.hpp"

#include "equivalence.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mahler;

namespace {

// Pinned limits.
constexpr double kConstantsSeconds = 1;
constexpr double kAppendixSeconds = 10;
constexpr double kGeneralCountSeconds = 300;
constexpr double kVolumeSeconds = 120;
constexpr int kAppendixDegree = 25;
constexpr int kEquivalenceDegree = 3;
constexpr int kEquivalenceT = 6;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void line(const std::string& name, const Outcome& o, double seconds)
{
    std::printf("%s %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

void run(const std::string& name, const std::function<Outcome()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    line(name, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

Outcome summarize(const std::vector<Check>& checks)
{
    Outcome o;
    int passed = 0;
    std::string first;
    for (const auto& c : checks) {
        passed += c.pass;
        if (!c.pass && first.empty()) first = "; first failure: " + c.name + " " + c.lhs + " " + c.relation + " " + c.rhs;
    }
    o.pass = !checks.empty() && passed == static_cast<int>(checks.size());
    o.detail = std::to_string(passed) + "/" + std::to_string(checks.size()) + " checks" + first;
    return o;
}

Outcome timed(Outcome o, double seconds, double limit)
{
    if (seconds >= limit) {
        o.pass = false;
        o.detail += "; runtime " + std::to_string(seconds) + "s over limit " + std::to_string(limit) + "s";
    }
    return o;
}

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Small fixed-seed report touching every randomized code path.
std::string sampled_fingerprint(int threads)
{
    nlohmann::ordered_json j;
    const auto v = mc_volume(3, 1, 100000, kSeed, threads);
    j["volume"] = {v.hits, v.mean, v.stderr_};
    const auto s = mc_slice_volume(SliceSpec{3, {1}, {}}, 2, 100000, kSeed, threads);
    j["slice"] = {s.hits, s.mean, s.stderr_};
    for (const auto& p : sample_patch(PatchSpec{3, 1, -1}, 200, kSeed)) j["patch"].push_back(p.image.entries);
    const auto L = lipschitz_check(PatchSpec{2, 1, 1}, 1, 2000, kSeed);
    j["lipschitz"] = {L.patch_ratio, L.cv_ratio};
    const auto D = donut_check(SliceSpec{3, {1}, {1}}, 10 * k1_donut(SliceSpec{3, {1}, {1}}).get_d(), 2000, kSeed);
    j["donut"] = {D.pass, D.in_difference};
    return j.dump();
}

} // namespace

int main()
{
    const VerifyOptions serial{1, kSeed};

    run("constants", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const Rational V15(Integer("2658455991569831745807614120560689152"),
                           Integer("13904872587870848957579157123046875"));
        Outcome o;
        o.pass = V(15) == V15 && V(0) == 2 && V(2) == 8 && kappa0(0) == 4 && kappa0(2) == 8000 && kappa1(2) == 96;
        for (int d = 0; d <= 60; ++d) o.pass = o.pass && V(d) <= V15;
        o.detail = "V(15)=" + V(15).get_str();
        return timed(o, since(t0), kConstantsSeconds);
    });

    run("appendix d<=25", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = appendix_checks(kAppendixDegree);
        return timed(summarize(checks), since(t0), kAppendixSeconds);
    });

    run("general counts d<=3 T<=10", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = general_count_checks(serial);
        return timed(summarize(checks), since(t0), kGeneralCountSeconds);
    });

    run("monic counts d=2..4 T<=10", [&] { return summarize(monic_count_checks(serial)); });

    VerifyReport moebius, sieves;
    run("moebius identity", [&] {
        moebius = verify_moebius(serial);
        return summarize(moebius.checks);
    });

    run("sieve bounds", [&] {
        sieves = verify_sieves(serial);
        return summarize(sieves.checks);
    });

    run("oracle equivalence d<=3 T<=6", [] {
        const auto r = equivalence::run_grid(kEquivalenceDegree, kEquivalenceT);
        Outcome o;
        o.pass = r.cases > 0 && r.discrepancies == 0 && r.loud == 0;
        o.detail = std::to_string(r.cases) + " cases, " + std::to_string(r.discrepancies) + " discrepancies, " +
                   std::to_string(r.loud) + " unresolved oracle values" +
                   (r.first_failure.empty() ? "" : "; first: " + r.first_failure);
        return o;
    });

    run("units d=2", [&] {
        // oracle: irreducible z^2 + b z + c with c = +-1 and measure <= 3, two roots each
        long polys = 0;
        for (std::int64_t c : {1, -1})
            for (std::int64_t b = -6; b <= 6; ++b) {
                const oracle::Vec w{1, b, c};
                if (oracle::irreducible(w) && oracle::classify(w, 3).inside) ++polys;
            }
        Outcome o = summarize(unit_checks(serial));
        o.pass = o.pass && 2 * polys == 18;
        o.detail += "; oracle " + std::to_string(2 * polys);
        return o;
    });

    run("MC volumes", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = volume_checks(serial);
        return timed(summarize(checks), since(t0), kVolumeSeconds);
    });

    run("geometry properties", [&] { return summarize(patch_property_checks(serial)); });

    VerifyReport davenport;
    run("davenport lines N<=4", [&] {
        davenport = verify_davenport(serial);
        Outcome o = summarize(davenport.checks);
        return o;
    });

    run("determinism threads {1,8} and reruns", [&] {
        Outcome o;
        std::vector<std::string> bad;
        const VerifyOptions eight{8, kSeed};
        const auto same = [&](const std::string& what, const VerifyReport& a, const VerifyReport& b) {
            if (to_json(a).dump() != to_json(b).dump()) bad.push_back(what);
        };
        same("moebius rerun", moebius, verify_moebius(serial));
        same("moebius threads", moebius, verify_moebius(eight));
        same("sieves rerun", sieves, verify_sieves(serial));
        same("sieves threads", sieves, verify_sieves(eight));
        const auto dav = verify_davenport(serial, 100);
        same("davenport rerun", dav, verify_davenport(serial, 100));
        same("davenport threads", dav, verify_davenport(eight, 100));
        const auto fp = sampled_fingerprint(1);
        if (fp != sampled_fingerprint(1)) bad.push_back("sampling rerun");
        if (fp != sampled_fingerprint(8)) bad.push_back("sampling threads");
        EnumFilter f;
        f.d = 3;
        f.T = 5;
        f.irreducible_only = true;
        EnumOptions one, many;
        many.threads = 8;
        if (enumerate(f, one) != enumerate(f, many)) bad.push_back("enumeration threads");
        o.pass = bad.empty();
        o.detail = bad.empty() ? "all reports identical" : "differs: " + bad.front();
        return o;
    });

    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
