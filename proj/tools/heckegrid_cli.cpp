#include "heckegrid/congruence.hpp"
#include "heckegrid/error.hpp"
#include "heckegrid/golden.hpp"
#include "heckegrid/grid.hpp"
#include "heckegrid/hecke.hpp"
#include "heckegrid/json_io.hpp"
#include "heckegrid/multcheck.hpp"
#include "heckegrid/parallel.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace heckegrid;

namespace {

enum Exit { Ok = 0, VerificationFailure = 1, Usage = 2, PrecisionOrIntegrality = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool verbose = false;

void note(const std::string& msg)
{
    if (verbose) fmt::print(stderr, "heckegrid: {}\n", msg);
}

// Family selector shared by hecke and congruence.
struct FamilyFlags {
    std::string family_path;
    int level = 0;
    int k = 0;
    int r = 0;
    int sign = 0;

    void add_to(CLI::App* app)
    {
        app->add_option("--family", family_path, "Family JSON written by `build`")->check(CLI::ExistingFile);
        app->add_option("--level", level, "Level N of the Fricke group (1-4)");
        app->add_option("--k", k, "Weight k (level 1)");
        app->add_option("--r", r, "Eta power r (level 1)");
        app->add_option("--sign", sign, "Fricke sign +1 or -1 (levels 2-4)");
    }

    bool from_file() const { return !family_path.empty(); }

    GridParams params() const
    {
        if (level == 0) throw UsageError("give --family or --level");
        return derive_params(level, k, r, sign);
    }
};

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
}

GridFamily read_family(const std::string& path)
{
    return family_from_json(read_json(path));
}

// Writes `doc` to `path`, or to stdout when the path is empty or "-".
void emit(const Json& doc, const std::string& path)
{
    const std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
    if (!out) throw UsageError("write to " + path + " failed");
}

std::string exponent(long n, long t)
{
    long g = std::gcd(n, t);
    long a = n / g;
    long b = t / g;
    if (b == 1) return a == 1 ? "q" : fmt::format("q^{}", a);
    return fmt::format("q^({}/{})", a, b);
}

// "q^(-7/6) - 71750 q^(5/6) - ..." with `terms` nonzero terms, or all known ones.
std::string pretty(const FracSeries& f, std::optional<long> terms)
{
    std::string out;
    long shown = 0;
    for (const auto& [n, c] : f.coeffs()) {
        if (terms && shown == *terms) break;
        Rational a = abs(c);
        std::string mag;
        if (n == 0) mag = to_string(a);
        else if (a == 1) mag = exponent(n, f.tick());
        else if (a.get_den() == 1) mag = to_string(a) + " " + exponent(n, f.tick());
        else mag = "(" + to_string(a) + ") " + exponent(n, f.tick());
        if (shown == 0) out = (c < 0 ? "-" : "") + mag;
        else out += (c < 0 ? " - " : " + ") + mag;
        ++shown;
    }
    if (shown == 0) out = "0";
    bool more = terms ? static_cast<long>(f.coeffs().size()) > *terms : false;
    out += more ? " - ..." : fmt::format(" + O(q^({}/{}))", f.prec(), f.tick());
    return out;
}

std::vector<long> parse_list(const std::string& text, const char* flag)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw UsageError(fmt::format("{}: '{}' is not an integer", flag, item));
        }
    }
    if (out.empty()) throw UsageError(fmt::format("{} needs at least one value", flag));
    return out;
}

// ---- build -----------------------------------------------------------------

struct BuildFlags {
    int level = 1;
    int k = 0;
    int r = 0;
    int sign = 0;
    long dmax = 24;
    long prec = 40;
    long seed_prec = 0;
    std::string out;
};

int run_build(const BuildFlags& f)
{
    if (f.prec < 1) throw UsageError("--prec must be positive");
    GridParams g = derive_params(f.level, f.k, f.r, f.sign);
    note("building " + describe(g));
    GridFamily fam = build_family(g, f.dmax, f.prec, f.seed_prec);
    emit(family_to_json(fam), f.out);
    if (!f.out.empty() && f.out != "-")
        fmt::print("{}: {} forms, d <= {}, prec {} -> {}\n", describe(g), fam.forms.size(), f.dmax, f.prec, f.out);
    return Ok;
}

// ---- show ------------------------------------------------------------------

struct ShowFlags {
    std::string in;
    std::optional<long> d;
    std::optional<long> terms;
};

int run_show(const ShowFlags& f)
{
    GridFamily fam = read_family(f.in);
    fmt::print("# {}\n", describe(fam.params));
    if (f.d) {
        fmt::print("f_{} = {}\n", *f.d, pretty(fam.form(*f.d), f.terms));
        return Ok;
    }
    for (const auto& [d, form] : fam.forms) fmt::print("f_{} = {}\n", d, pretty(form, f.terms));
    return Ok;
}

// ---- hecke -----------------------------------------------------------------

struct HeckeFlags {
    FamilyFlags family;
    std::string p = "5";
    std::string n = "1";
    long positions = 25;
    std::string report;
};

Json verdict_to_json(const IdentityVerdict& v)
{
    Json j;
    j["p"] = v.p;
    j["n"] = v.n;
    j["seed"] = v.seed;
    j["target"] = v.target;
    j["eigenvalue"] = v.eigenvalue.get_str();
    if (v.correction_index) {
        j["correction_index"] = *v.correction_index;
        j["correction_coefficient"] = to_string(v.correction_coefficient);
    } else {
        j["correction_index"] = nullptr;
        j["correction_coefficient"] = nullptr;
    }
    j["window"] = v.window;
    j["compared_positions"] = v.compared_positions;
    j["pass"] = v.pass;
    j["first_discrepancy"] = v.first_discrepancy ? Json(*v.first_discrepancy) : Json(nullptr);
    j["lhs"] = series_to_json(v.lhs);
    j["rhs"] = series_to_json(v.rhs);
    return j;
}

std::string identity_line(const IdentityVerdict& v)
{
    std::string rhs = fmt::format("{} f_{}", v.eigenvalue.get_str(), v.target);
    if (v.correction_index) {
        std::string name = *v.correction_index == -1 && v.params.level > 1 ? fmt::format("h_{}", v.params.level)
                                                                            : fmt::format("f_{}", *v.correction_index);
        rhs += fmt::format(" + ({}) {}", to_string(v.correction_coefficient), name);
    }
    std::string status = v.pass ? "pass" : fmt::format("FAIL at numerator {}", v.first_discrepancy.value_or(0));
    return fmt::format("p={} n={}: f_{} | T({}^{}) = {}  [{} positions] {}", v.p, v.n, v.seed, v.p, v.n, rhs,
                       v.compared_positions, status);
}

int run_hecke(const HeckeFlags& f)
{
    auto ps = parse_list(f.p, "--p");
    auto ns = parse_list(f.n, "--n");
    if (f.positions < 1) throw UsageError("--positions must be positive");

    std::optional<GridFamily> stored;
    GridParams g;
    if (f.family.from_file()) {
        stored = read_family(f.family.family_path);
        g = stored->params;
    } else {
        g = f.family.params();
    }
    std::vector<std::pair<long, long>> jobs;
    for (long p : ps)
        for (long n : ns) {
            check_admissible(hecke_spec(g, p, n));
            jobs.emplace_back(p, n);
        }

    note(fmt::format("{} identity checks for {}", jobs.size(), describe(g)));
    auto verdicts = parallel_map<IdentityVerdict>(jobs.size(), [&](std::size_t i) {
        auto [p, n] = jobs[i];
        if (stored) return check_grid_identity(*stored, p, n);
        return check_grid_identity(family_for_identity(g, p, n, f.positions), p, n);
    });

    Json doc;
    doc["params"] = params_to_json(g);
    doc["checks"] = Json::array();
    bool all = true;
    fmt::print("# {}\n", describe(g));
    for (const auto& v : verdicts) {
        fmt::print("{}\n", identity_line(v));
        doc["checks"].push_back(verdict_to_json(v));
        all = all && v.pass;
    }
    doc["pass"] = all;
    if (!f.report.empty()) emit(doc, f.report);
    return all ? Ok : VerificationFailure;
}

// ---- congruence ------------------------------------------------------------

struct CongruenceFlags {
    FamilyFlags family;
    int level34 = 0;
    std::string coeffs;
    std::string p = "5";
    long nmax = 1;
    long terms = 40;
    std::string json;
};

Json report_to_json(const CongruenceReport& r)
{
    Json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["target_exponent"] = r.target;
    j["min_valuation"] = r.profile.min ? Json(*r.profile.min) : Json(nullptr);
    j["nonzero"] = r.nonzero;
    j["window"] = r.profile.prec;
    j["verdict"] = to_string(r.verdict);
    j["statement"] = r.statement;
    if (!r.note.empty()) j["note"] = r.note;
    Json profile = Json::object();
    for (const auto& [n, v] : r.profile.valuations) profile[std::to_string(n)] = v;
    j["profile"] = std::move(profile);
    return j;
}

std::string report_line(const CongruenceReport& r)
{
    std::string min = r.profile.min ? std::to_string(*r.profile.min) : "-";
    return fmt::format("{}: min v_{} = {} over {} nonzero coefficients, {}", r.statement, r.p, min, r.nonzero,
                       to_string(r.verdict));
}

int run_congruence(const CongruenceFlags& f)
{
    auto ps = parse_list(f.p, "--p");
    if (f.nmax < 1) throw UsageError("--nmax must be at least 1");
    if (f.terms < 1) throw UsageError("--terms must be positive");

    std::vector<std::pair<long, long>> jobs;
    for (long p : ps)
        for (long n = 1; n <= f.nmax; ++n) jobs.emplace_back(p, n);

    Json doc;
    std::vector<CongruenceReport> reports;
    std::optional<GridParams> grid;

    if (f.level34 != 0) {
        if (f.family.from_file() || f.family.level != 0) throw UsageError("--level34 excludes --family and --level");
        Level34Form form{f.level34, {}};
        std::stringstream ss(f.coeffs);
        std::string item;
        while (std::getline(ss, item, ',')) form.coefficients.push_back(parse_rational(item));
        doc["level34"] = f.level34;
        Json cs = Json::array();
        for (const auto& c : form.coefficients) cs.push_back(to_string(c));
        doc["coefficients"] = cs;
        reports = parallel_map<CongruenceReport>(jobs.size(), [&](std::size_t i) {
            return check_level34_statement(form, jobs[i].first, jobs[i].second, f.terms);
        });
        fmt::print("# level {} statement, f = {}\n", f.level34, f.coeffs);
    } else {
        std::optional<GridFamily> stored;
        if (f.family.from_file()) stored = read_family(f.family.family_path);
        grid = stored ? stored->params : f.family.params();
        for (long p : ps) check_admissible(hecke_spec(*grid, p, f.nmax));
        doc["params"] = params_to_json(*grid);
        // One family per prime, deep enough for p^nmax.
        std::vector<GridFamily> families;
        if (!stored)
            families = parallel_map<GridFamily>(ps.size(), [&](std::size_t i) {
                return family_for_congruence(*grid, ps[i], f.nmax, f.terms);
            });
        reports = parallel_map<CongruenceReport>(jobs.size(), [&](std::size_t i) {
            std::size_t which = i / static_cast<std::size_t>(f.nmax);
            return check_family_congruence(stored ? *stored : families[which], jobs[i].first, jobs[i].second);
        });
        fmt::print("# {}\n", describe(*grid));
    }

    doc["reports"] = Json::array();
    bool fail = false;
    bool inconclusive = false;
    for (const auto& r : reports) {
        fmt::print("{}\n", report_line(r));
        if (!r.note.empty()) fmt::print("  note: {}\n", r.note);
        doc["reports"].push_back(report_to_json(r));
        fail = fail || r.verdict == Verdict::Fail;
        inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
    }
    if (grid) {
        // A_p from the reports themselves: max(0, target - min) over n.
        Json ap = Json::object();
        for (long p : ps) {
            long a = 0;
            for (const auto& r : reports)
                if (r.p == p && r.profile.min) a = std::max(a, r.target - *r.profile.min);
            ap[std::to_string(p)] = a;
            fmt::print("estimated A_{} = {}\n", p, a);
        }
        doc["estimated_Ap"] = ap;
    }
    doc["verdict"] = fail ? "fail" : inconclusive ? "inconclusive" : "pass";
    if (!f.json.empty()) emit(doc, f.json);
    if (fail) return VerificationFailure;
    return inconclusive ? PrecisionOrIntegrality : Ok;
}

// ---- multcheck -------------------------------------------------------------

struct MultcheckFlags {
    int samples = 200;
    std::uint64_t seed = 1;
    std::string json;
};

int run_multcheck(const MultcheckFlags& f)
{
    if (f.samples < 1) throw UsageError("--samples must be positive");
    MultcheckSummary s = run_multiplier_suite(f.samples, f.seed);
    Json doc;
    doc["samples"] = f.samples;
    doc["seed"] = f.seed;
    doc["conventions_passing"] = s.conventions_passing;
    doc["convention"] = {{"top_sign", s.chosen.top_sign}, {"bottom_sign", s.chosen.bottom_sign}};
    doc["checks"] = Json::array();
    for (const auto& l : s.lines) {
        Json j;
        j["check"] = l.check;
        j["samples"] = l.samples;
        j["failures"] = l.failures;
        if (!l.first_failure.empty()) j["first_failure"] = l.first_failure;
        doc["checks"].push_back(std::move(j));
    }
    doc["pass"] = s.pass();
    emit(doc, f.json);
    return s.pass() ? Ok : VerificationFailure;
}

// ---- selftest --------------------------------------------------------------

int run_selftest()
{
    const auto& corpus = golden_corpus();
    auto reports = parallel_map<GoldenReport>(corpus.size(), [&](std::size_t i) { return check_golden(corpus[i]); });
    long checked = 0;
    long failed = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& r = reports[i];
        fmt::print("{}: {} values, {} mismatches\n", corpus[i].name, r.checked, r.failures.size());
        for (const auto& line : r.failures) fmt::print("  {}\n", line);
        checked += r.checked;
        failed += static_cast<long>(r.failures.size());
    }
    bool pass = failed == 0 && checked > 0;
    fmt::print("selftest: {} golden values checked, {} mismatches: {}\n", checked, failed, pass ? "PASS" : "FAIL");
    return pass ? Ok : VerificationFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hecke grids of weakly holomorphic modular forms on the Fricke groups of level 1-4"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

    BuildFlags bf;
    auto* build = app.add_subcommand("build", "Construct a grid family and write it as JSON");
    build->add_option("--level", bf.level, "Level N (1-4)")->required();
    build->add_option("--k", bf.k, "Weight k (level 1)");
    build->add_option("--r", bf.r, "Eta power r in {4,8,12,16,20} (level 1)");
    build->add_option("--sign", bf.sign, "Fricke sign +1 or -1 (levels 2-4)");
    build->add_option("--dmax", bf.dmax, "Largest ladder index")->capture_default_str();
    build->add_option("--prec", bf.prec, "Numerator bound of every form")->capture_default_str();
    build->add_option("--seed-prec", bf.seed_prec, "Numerator bound of the seeds, if larger");
    build->add_option("--out", bf.out, "Output path (stdout when omitted)");

    ShowFlags sf;
    auto* show = app.add_subcommand("show", "Print the forms of a family");
    show->add_option("--in", sf.in, "Family JSON")->required()->check(CLI::ExistingFile);
    show->add_option("--d", sf.d, "Only this index");
    show->add_option("--terms", sf.terms, "Nonzero terms per form")->check(CLI::PositiveNumber);

    HeckeFlags hf;
    auto* hecke = app.add_subcommand("hecke", "Check the grid identities for f_seed | T(p^n)");
    hf.family.add_to(hecke);
    hecke->add_option("--p", hf.p, "Prime or comma-separated primes")->capture_default_str();
    hecke->add_option("--n", hf.n, "Power or comma-separated powers")->capture_default_str();
    hecke->add_option("--positions", hf.positions, "Free coefficients compared when building")->capture_default_str();
    hecke->add_option("--report", hf.report, "JSON report path ('-' for stdout)");

    CongruenceFlags cf;
    auto* congruence = app.add_subcommand("congruence", "Check F_1 | U(p^n) against the claimed power of p");
    cf.family.add_to(congruence);
    congruence->add_option("--level34", cf.level34, "Check the level 3/4 statement for N = 3 or 4")
        ->check(CLI::IsMember({3, 4}));
    congruence->add_option("--coeffs", cf.coeffs, "f in the basis {F+, F-} (N=3) or {F+, F-, E4(2z)} (N=4)");
    congruence->add_option("--p", cf.p, "Prime or comma-separated primes")->capture_default_str();
    congruence->add_option("--nmax", cf.nmax, "Check n = 1..nmax")->capture_default_str();
    congruence->add_option("--terms", cf.terms, "Coefficients kept in each U(p^n) window")->capture_default_str();
    congruence->add_option("--json", cf.json, "JSON report path ('-' for stdout)");

    MultcheckFlags mf;
    auto* multcheck = app.add_subcommand("multcheck", "Check the multiplier systems; prints a JSON summary");
    multcheck->add_option("--samples", mf.samples, "Random matrices per check")->capture_default_str();
    multcheck->add_option("--seed", mf.seed, "RNG seed")->capture_default_str();
    multcheck->add_option("--json", mf.json, "Write the summary here instead of stdout");

    auto* selftest = app.add_subcommand("selftest", "Check the embedded golden coefficient tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    auto started = std::chrono::steady_clock::now();
    int status = Ok;
    try {
        if (*build) status = run_build(bf);
        else if (*show) status = run_show(sf);
        else if (*hecke) status = run_hecke(hf);
        else if (*congruence) {
            if (cf.level34 == 0 && !cf.coeffs.empty()) throw UsageError("--coeffs needs --level34");
            if (cf.level34 != 0 && cf.coeffs.empty()) throw UsageError("--level34 needs --coeffs");
            status = run_congruence(cf);
        } else if (*multcheck) status = run_multcheck(mf);
        else if (*selftest) status = run_selftest();
    } catch (const UsageError& e) {
        fmt::print(stderr, "heckegrid: {}\n", e.what());
        return Usage;
    } catch (const DomainError& e) {
        fmt::print(stderr, "heckegrid: {}\n", e.what());
        return Usage;
    } catch (const TickError& e) {
        fmt::print(stderr, "heckegrid: {}\n", e.what());
        return Usage;
    } catch (const PrecisionError& e) {
        fmt::print(stderr, "heckegrid: precision: {}\n", e.what());
        return PrecisionOrIntegrality;
    } catch (const IntegralityError& e) {
        fmt::print(stderr, "heckegrid: integrality: {}\n", e.what());
        return PrecisionOrIntegrality;
    } catch (const Error& e) {
        fmt::print(stderr, "heckegrid: {}\n", e.what());
        return VerificationFailure;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    note(fmt::format("done in {} ms", ms.count()));
    return status;
}
