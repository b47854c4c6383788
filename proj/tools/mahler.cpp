// Command-line driver: counts, census, volumes, constants, geometry probes
// and verify suites.

#include "CLI11.hpp"
#include "json.hpp"

#include "mahler/constants.hpp"
#include "mahler/counts.hpp"
#include "mahler/geometry.hpp"
#include "mahler/verify.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mahler;
using json = nlohmann::ordered_json;

namespace {

struct Config {
    int d = 0;
    std::string height, measure_bound;
    std::string cls = "all";
    std::vector<std::int64_t> lead, trail;
    std::optional<long long> norm, trace;
    std::int64_t samples = 1000000;
    std::uint64_t seed = 20240601;
    unsigned threads = 1;
    std::string out, format = "csv";
    double cap = 1e10;
    std::string suite;
    std::optional<int> v;
    bool no_timing = false;
    bool strict = false;
    // geometry
    std::string op = "patch";
    int k = 0, eps = 1, axis = 0;
    bool monic = false;
    std::vector<double> anchor;
    int resolution = 1000, depth = 20;
};

// Exit code 2: a precondition of the requested operation does not hold.
struct Precondition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

// T from --measure-bound, or H^d from --height.
std::pair<Rational, std::optional<Rational>> threshold(const Config& c, bool required = true)
{
    if (!c.height.empty() && !c.measure_bound.empty())
        throw Precondition("give either --height or --measure-bound, not both");
    if (!c.measure_bound.empty()) return {parse_rational(c.measure_bound), std::nullopt};
    if (!c.height.empty()) {
        const Rational H = parse_rational(c.height);
        if (H < 0) throw Precondition("H >= 0 required");
        return {rpow(H, static_cast<unsigned long>(c.d)), H};
    }
    if (required) throw Precondition("--height or --measure-bound is required");
    return {Rational(1), std::nullopt};
}

EnumOptions enum_options(const Config& c)
{
    EnumOptions e;
    e.threads = c.threads;
    e.cap = c.cap;
    return e;
}

json report_json(const CountReport& r, bool timing)
{
    json j;
    j["class"] = r.cls;
    j["d"] = r.d;
    j["params"] = r.params;
    j["H"] = r.H ? json(to_string(*r.H)) : json(nullptr);
    j["T"] = to_string(r.T);
    j["count"] = r.count.get_str();
    j["main_term"] = fmt_ld(r.main_term);
    j["error_bound"] = r.error_bound ? json(fmt_ld(*r.error_bound)) : json(nullptr);
    j["within_bound"] = r.within_bound ? json(*r.within_bound) : json(nullptr);
    j["theorem_tag"] = r.theorem_tag;
    j["note"] = r.note;
    j["seconds"] = timing ? r.seconds : 0.0;
    return j;
}

CountReport run_count(const Config& c)
{
    const auto [T, H] = threshold(c);
    const EnumOptions eo = enum_options(c);
    const std::string& k = c.cls;
    if (k == "all") return count_M_atmost(c.d, T, eo);
    if (k == "monic") return count_M1(c.d, T, eo);
    if (k == "slice") return count_slice(SliceSpec{c.d, c.lead, c.trail}, T, eo);
    if (k.rfind("reducible", 0) == 0) {
        static const std::map<std::string, ReducibleClass> m = {{"reducible", ReducibleClass::All},
                                                                {"reducible_monic", ReducibleClass::Monic},
                                                                {"reducible_norm", ReducibleClass::Norm},
                                                                {"reducible_trace", ReducibleClass::Trace},
                                                                {"reducible_norm_trace", ReducibleClass::NormTrace}};
        auto it = m.find(k);
        if (it == m.end()) throw Precondition("unknown class: " + k);
        if ((it->second == ReducibleClass::Norm || it->second == ReducibleClass::NormTrace) && !c.norm)
            throw Precondition(k + ": --norm is required");
        if ((it->second == ReducibleClass::Trace || it->second == ReducibleClass::NormTrace) && !c.trace)
            throw Precondition(k + ": --trace is required");
        return count_reducible(it->second, c.d, T, c.norm.value_or(0), c.trace.value_or(0), eo);
    }
    static const std::map<std::string, AlgebraicClass> alg = {
        {"numbers", AlgebraicClass::Numbers}, {"integers", AlgebraicClass::Integers},
        {"units", AlgebraicClass::Units},     {"norm", AlgebraicClass::Norm},
        {"trace", AlgebraicClass::Trace},     {"norm_trace", AlgebraicClass::NormTrace}};
    auto it = alg.find(k);
    if (it == alg.end()) throw Precondition("unknown class: " + k);
    AlgebraicQuery q;
    q.cls = it->second;
    q.d = c.d;
    if (q.cls == AlgebraicClass::Norm || q.cls == AlgebraicClass::NormTrace) {
        if (!c.norm) throw Precondition(k + ": --norm is required");
        q.nu = *c.norm;
    }
    if (q.cls == AlgebraicClass::Trace || q.cls == AlgebraicClass::NormTrace) {
        if (!c.trace) throw Precondition(k + ": --trace is required");
        q.tau = *c.trace;
    }
    return count_algebraic(q, T, eo, H);
}

int cmd_count(const Config& c)
{
    const CountReport r = run_count(c);
    if (!r.note.empty() && r.note.rfind("regime", 0) == 0) {
        std::cerr << "warning: " << r.theorem_tag << " " << r.note << "; no error bound reported\n";
        if (c.strict) return 2;
    }
    Output out(c.out);
    if (c.format == "json") {
        out.os() << report_json(r, !c.no_timing).dump(2) << '\n';
    } else {
        write_counts_header(out.os());
        write_counts_row(out.os(), r, !c.no_timing);
    }
    return r.within_bound.value_or(true) ? 0 : 1;
}

int cmd_census(const Config& c)
{
    if (c.height.empty()) throw Precondition("census: --height is required");
    const auto pts = census(c.d, parse_rational(c.height), enum_options(c));
    Output out(c.out);
    if (c.format == "json") {
        json a = json::array();
        for (const auto& p : pts) {
            std::vector<std::string> co;
            for (const auto& x : p.poly.coeffs) co.push_back(x.get_str());
            a.push_back({{"degree", p.d},
                         {"height", fmt_ld(p.height)},
                         {"re", fmt_ld(p.root.real())},
                         {"im", fmt_ld(p.root.imag())},
                         {"coeffs", co},
                         {"measure", fmt_ld(p.measure)}});
        }
        out.os() << a.dump(2) << '\n';
    } else {
        write_census_header(out.os());
        for (const auto& p : pts) write_census_row(out.os(), p);
    }
    return 0;
}

int cmd_volume(const Config& c)
{
    const auto [Tq, H] = threshold(c, false);
    const double T = to_double(Tq);
    const bool slice = !c.lead.empty() || !c.trail.empty();
    MCEstimate e;
    std::optional<long double> exact;
    json params = {{"d", c.d}, {"T", fmt_ld(T)}};
    if (slice) {
        const SliceSpec s{c.d, c.lead, c.trail};
        e = mc_slice_volume(s, T, c.samples, c.seed, c.threads);
        params["lead"] = c.lead;
        params["trail"] = c.trail;
        if (c.lead == std::vector<std::int64_t>{1} && c.trail.empty()) exact = p_poly(c.d)(T);
    } else {
        e = mc_volume(c.d, T, c.samples, c.seed, c.threads);
        exact = to_ld(V(c.d)) * std::pow(static_cast<long double>(T), c.d + 1);
    }
    const std::optional<bool> pass =
        exact ? std::optional<bool>(std::fabs(e.mean - *exact) <= 4 * e.stderr_) : std::nullopt;
    Output out(c.out);
    if (c.format == "json") {
        json j = {{"op", slice ? "slice_volume" : "volume"},
                  {"params", params},
                  {"estimate", e.mean},
                  {"stderr", e.stderr_},
                  {"samples", e.samples},
                  {"seed", e.seed},
                  {"box_volume", e.box_volume},
                  {"exact", exact ? json(fmt_ld(*exact)) : json(nullptr)},
                  {"pass", pass ? json(*pass) : json(nullptr)}};
        out.os() << j.dump(2) << '\n';
    } else {
        out.os() << "op,d,T,estimate,stderr,samples,seed,exact,pass\n"
                 << (slice ? "slice_volume" : "volume") << ',' << c.d << ',' << fmt_ld(T) << ',' << fmt_ld(e.mean)
                 << ',' << fmt_ld(e.stderr_) << ',' << e.samples << ',' << e.seed << ','
                 << (exact ? fmt_ld(*exact) : "") << ',' << (pass ? (*pass ? "true" : "false") : "") << '\n';
    }
    return pass.value_or(true) ? 0 : 1;
}

int cmd_constants(const Config& c)
{
    std::vector<std::pair<std::string, std::string>> rows;
    if (c.v) rows.emplace_back("V(" + std::to_string(*c.v) + ")", to_string(V(*c.v)));
    if (c.d > 0 || !c.v) {
        const int d = c.d > 0 ? c.d : 2;
        const std::string s = "(" + std::to_string(d) + ")";
        rows.emplace_back("V" + s, to_string(V(d)));
        std::string pd;
        const auto p = p_poly(d);
        for (std::size_t i = 0; i < p.coeff.size(); ++i) pd += (i ? " " : "") + to_string(p.coeff[i]);
        rows.emplace_back("p" + s + " ascending", pd);
        rows.emplace_back("P" + s, P(d).get_str());
        rows.emplace_back("A" + s, A(d).get_str());
        rows.emplace_back("B" + s, B(d).get_str());
        rows.emplace_back("kappa0" + s, to_string(kappa0(d)));
        if (d >= 2) rows.emplace_back("kappa1" + s, to_string(kappa1(d)));
        if (!c.lead.empty() || !c.trail.empty()) {
            const SliceSpec sl{d, c.lead, c.trail};
            sl.validate();
            rows.emplace_back("k1", to_string(k1_donut(sl)));
            rows.emplace_back("kappa", fmt_ld(kappa_slice(sl)));
            rows.emplace_back("c_exvol", fmt_ld(c_exvol(sl)));
        }
    }
    Output out(c.out);
    if (c.format == "json") {
        json j;
        for (const auto& [k, v] : rows) j[k] = v;
        out.os() << j.dump(2) << '\n';
    } else {
        out.os() << "name,value\n";
        for (const auto& [k, v] : rows) out.os() << k << ',' << v << '\n';
    }
    return 0;
}

int cmd_geometry(const Config& c)
{
    const auto [Tq, H] = threshold(c, false);
    const double T = to_double(Tq);
    json params = {{"d", c.d}, {"T", fmt_ld(T)}};
    json j;
    bool pass = true;
    if (c.op == "patch") {
        const PatchSpec ps{c.d, c.k, c.eps, c.monic, T};
        double worst = 0;
        for (const auto& s : sample_patch(ps, c.samples, c.seed)) worst = std::max(worst, s.residual);
        pass = worst <= 1e-9;
        params.update({{"k", c.k}, {"eps", c.eps}, {"monic", c.monic}});
        j = {{"op", "patch"}, {"params", params}, {"estimate", worst}, {"stderr", nullptr}};
    } else if (c.op == "lipschitz") {
        const auto L = lipschitz_check(PatchSpec{c.d, c.k, c.eps, false, 1}, T, c.samples, c.seed);
        pass = L.patch_ratio <= 1 && L.cv_ratio <= 1;
        params.update({{"k", c.k}, {"eps", c.eps}});
        j = {{"op", "lipschitz"},
             {"params", params},
             {"estimate", {{"patch_ratio", L.patch_ratio}, {"cv_ratio", L.cv_ratio}}},
             {"stderr", nullptr}};
    } else if (c.op == "donut") {
        const SliceSpec s{c.d, c.lead, c.trail};
        const auto D = donut_check(s, T, c.samples, c.seed);
        pass = D.pass;
        params.update({{"lead", c.lead}, {"trail", c.trail}});
        j = {{"op", "donut"},
             {"params", params},
             {"estimate", {{"difference_points", D.in_difference}, {"delta", D.delta}, {"witnesses", D.witnesses}}},
             {"stderr", nullptr}};
    } else if (c.op == "line") {
        const LineSpec line{c.d, c.axis, c.anchor};
        const auto r = line_components(line, T, c.resolution, c.depth);
        pass = r.components <= davenport_bound(c.d) && !r.uncertain;
        params.update({{"axis", c.axis}, {"anchor", c.anchor}});
        j = {{"op", "line"},
             {"params", params},
             {"estimate",
              {{"components", r.components},
               {"uncertain", r.uncertain},
               {"uncertain_cells", r.uncertain_cells},
               {"boundary_slivers", r.boundary_slivers}}},
             {"stderr", nullptr}};
    } else {
        throw Precondition("unknown geometry op: " + c.op);
    }
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["pass"] = pass;
    Output out(c.out);
    out.os() << j.dump(2) << '\n';
    return pass ? 0 : 1;
}

int cmd_verify(const Config& c)
{
    VerifyOptions o;
    o.threads = c.threads;
    o.seed = c.seed;
    std::vector<std::string> names;
    if (c.suite.empty() || c.suite == "all") names = suite_names();
    else names = {c.suite};
    for (const auto& n : names)
        if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
            throw Precondition("unknown suite: " + n);
    bool ok = true;
    json reports = json::array();
    for (const auto& n : names) {
        const auto r = verify_suite(n, o);
        ok = ok && r.pass();
        reports.push_back(to_json(r));
    }
    Output out(c.out);
    out.os() << (reports.size() == 1 ? reports[0] : reports).dump(2) << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integer polynomials and algebraic numbers of bounded Mahler measure"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--d", c.d, "degree (census: maximal degree)");
        s->add_option("--height", c.height, "height bound H, exact decimal or p/q; T = H^d");
        s->add_option("--measure-bound", c.measure_bound, "measure bound T, exact decimal or p/q");
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
        s->add_option("--out", c.out, "output path (default stdout)");
        s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--cap", c.cap, "refuse searches above this many candidates");
    };

    auto* count = app.add_subcommand("count", "exact counts with main term and error bound");
    common(count);
    count->add_option("--class", c.cls,
                      "all, monic, slice, reducible, reducible_monic, reducible_norm, reducible_trace, "
                      "reducible_norm_trace, numbers, integers, units, norm, trace, norm_trace");
    count->add_option("--lead", c.lead, "fixed leading coefficients, comma separated")->delimiter(',');
    count->add_option("--trail", c.trail, "fixed trailing coefficients, comma separated")->delimiter(',');
    count->add_option("--norm", c.norm, "norm nu (algebraic) or constant coefficient r (reducible)");
    count->add_option("--trace", c.trace, "trace tau (algebraic) or second coefficient t (reducible)");
    count->add_flag("--no-timing", c.no_timing, "write 0 in the seconds column");
    count->add_flag("--strict", c.strict, "exit 2 when the bound's regime is not met");

    auto* cen = app.add_subcommand("census", "all algebraic numbers of degree <= d and height <= H");
    common(cen);

    auto* vol = app.add_subcommand("volume", "Monte Carlo volume of T U_d or of a slice");
    common(vol);
    vol->add_option("--samples", c.samples, "number of samples");
    vol->add_option("--lead", c.lead, "fixed leading coefficients")->delimiter(',');
    vol->add_option("--trail", c.trail, "fixed trailing coefficients")->delimiter(',');

    auto* cons = app.add_subcommand("constants", "exact constants");
    common(cons);
    cons->add_option("--v", c.v, "print V(n)");
    cons->add_option("--lead", c.lead, "slice leading coefficients")->delimiter(',');
    cons->add_option("--trail", c.trail, "slice trailing coefficients")->delimiter(',');

    auto* geo = app.add_subcommand("geometry", "patch, Lipschitz, donut and line-scan probes");
    common(geo);
    geo->add_option("--op", c.op, "patch, lipschitz, donut or line")
        ->check(CLI::IsMember({"patch", "lipschitz", "donut", "line"}));
    geo->add_option("--samples", c.samples, "samples or pairs");
    geo->add_option("--k", c.k, "patch index");
    geo->add_option("--eps", c.eps, "patch sign");
    geo->add_flag("--monic", c.monic, "monic patch");
    geo->add_option("--lead", c.lead, "slice leading coefficients")->delimiter(',');
    geo->add_option("--trail", c.trail, "slice trailing coefficients")->delimiter(',');
    geo->add_option("--axis", c.axis, "line axis");
    geo->add_option("--anchor", c.anchor, "line anchor, comma separated")->delimiter(',');
    geo->add_option("--resolution", c.resolution, "line grid size");
    geo->add_option("--depth", c.depth, "line refinement depth");

    auto* ver = app.add_subcommand("verify", "run verify suites and print the JSON report");
    common(ver);
    ver->add_option("--suite", c.suite, "bounds, sieves, appendix, geometry, moebius, davenport or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*count) return cmd_count(c);
        if (*cen) return cmd_census(c);
        if (*vol) return cmd_volume(c);
        if (*cons) return cmd_constants(c);
        if (*geo) return cmd_geometry(c);
        if (*ver) return cmd_verify(c);
    } catch (const SearchSpaceRefusal& e) {
        std::cerr << "refused: " << e.what() << " (estimate " << fmt_ld(e.estimate, 6) << ", cap " << c.cap
                  << ")\n";
        return 3;
    } catch (const RegimeViolation& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
