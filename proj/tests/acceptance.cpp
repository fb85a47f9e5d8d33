// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
#include "heckegrid/congruence.hpp"
#include "heckegrid/error.hpp"
#include "heckegrid/generators.hpp"
#include "heckegrid/golden.hpp"
#include "heckegrid/hecke.hpp"
#include "heckegrid/multcheck.hpp"
#include "heckegrid/parallel.hpp"
#include "support.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <string>
#include <vector>

using namespace heckegrid;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> problems;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            problems.push_back(what);
        }
    }
};

Outcome golden_reproduction()
{
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    GoldenReport r = check_golden(golden_corpus());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(r.checked >= 100, fmt::format("only {} golden values", r.checked));
    for (const auto& f : r.failures) o.expect(false, f);
    o.expect(secs < 60, fmt::format("took {:.1f} s", secs));
    o.detail = fmt::format("{} values, {} mismatches, {:.2f} s", r.checked, r.failures.size(), secs);
    return o;
}

struct IdentityJob {
    GridParams g;
    long p;
    long n;
};

Outcome hecke_identities()
{
    Outcome o;
    std::vector<IdentityJob> jobs;
    auto add = [&](GridParams g, std::vector<long> ps) {
        for (long p : ps)
            for (long n : {1L, 2L}) jobs.push_back({g, p, n});
    };
    add(derive_params(1, 6, 4, 0), {5, 7, 11, 13});
    add(derive_params(1, 4, 4, 0), {5, 7, 11, 13});
    for (int sign : {1, -1}) add(derive_params(2, 0, 0, sign), {3, 5, 7, 11, 13});
    for (int level : {3, 4})
        for (int sign : {1, -1}) add(derive_params(level, 0, 0, sign), {5, 7, 11, 13});

    auto verdicts = parallel_map<IdentityVerdict>(jobs.size(), [&](std::size_t i) {
        const auto& j = jobs[i];
        return check_grid_identity(family_for_identity(j.g, j.p, j.n), j.p, j.n);
    });
    long min_positions = 1L << 40;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& v = verdicts[i];
        std::string where = fmt::format("{} p={} n={}", describe(jobs[i].g), jobs[i].p, jobs[i].n);
        o.expect(v.pass, where + ": identity fails at numerator " + std::to_string(v.first_discrepancy.value_or(0)));
        o.expect(v.compared_positions >= 10, where + ": fewer than 10 compared coefficients");
        min_positions = std::min(min_positions, v.compared_positions);
    }

    auto at = [&](GridParams g, long p) -> const IdentityVerdict& {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].g == g && jobs[i].p == p && jobs[i].n == 1) return verdicts[i];
        throw DomainError("anchor job missing");
    };
    const auto& one = at(derive_params(1, 6, 4, 0), 5);
    o.expect(one.lhs.coeff(1) == -500 && one.rhs.coeff(1) == 125 * -4, "anchor -500 = 125 * (-4)");
    const auto& two_plus = at(derive_params(2, 0, 0, 1), 3);
    o.expect(two_plus.lhs.coeff(1) == -78 && two_plus.rhs.coeff(1) == 3 * -26, "anchor -78 = 3 * (-26)");
    const auto& two_minus = at(derive_params(2, 0, 0, -1), 3);
    o.expect(two_minus.lhs.coeff(5) == 12995 && two_minus.correction_coefficient == 50 &&
                 two_minus.rhs.coeff(5) == 3 * 4365 + 50 * -2,
             "anchor 12995 = 3 * 4365 + 50 * (-2)");
    const auto& three_minus = at(derive_params(3, 0, 0, -1), 5);
    o.expect(three_minus.correction_coefficient == 269 && three_minus.lhs.coeff(1) == 269, "anchor 269 correction");
    const auto& four_plus = at(derive_params(4, 0, 0, 1), 5);
    o.expect(four_plus.lhs.coeff(1) == -140 && four_plus.rhs.coeff(1) == 5 * -28, "anchor -140 = 5 * (-28)");

    o.detail = fmt::format("{} identities, at least {} coefficients each, 5 anchors", jobs.size(), min_positions);
    return o;
}

Outcome congruences()
{
    Outcome o;
    long verdicts = 0;
    auto family_check = [&](GridParams g, long p, long n, long expected_target) {
        GridFamily fam = family_for_congruence(g, p, n);
        CongruenceReport r = check_family_congruence(fam, p, n);
        std::string where = fmt::format("{} U({}^{})", describe(g), p, n);
        o.expect(r.target == expected_target, where + fmt::format(": target {} != {}", r.target, expected_target));
        o.expect(r.verdict == Verdict::Pass,
                 where + ": " + to_string(r.verdict) + fmt::format(" (min {}, {} nonzero)", r.profile.min.value_or(-1), r.nonzero));
        o.expect(estimate_Ap(fam, p, n) == 0, where + ": A_p != 0");
        ++verdicts;
    };
    const GridParams f44 = derive_params(1, 4, 4, 0);
    family_check(f44, 7, 1, 1);
    family_check(f44, 7, 2, 2);
    family_check(f44, 5, 2, 1);
    const GridParams g64 = derive_params(1, 6, 4, 0);
    family_check(g64, 5, 1, 3);
    family_check(g64, 5, 2, 6);
    for (int sign : {1, -1}) {
        family_check(derive_params(2, 0, 0, sign), 5, 1, 1);
        family_check(derive_params(2, 0, 0, sign), 5, 2, 2);
        family_check(derive_params(2, 0, 0, sign), 3, 1, 0);
        family_check(derive_params(2, 0, 0, sign), 3, 2, 1);
    }
    for (int level : {3, 4})
        for (int sign : {1, -1})
            for (long p : {5L, 7L})
                for (long n : {1L, 2L}) family_check(derive_params(level, 0, 0, sign), p, n, p == 7 ? n : n / 2);

    std::vector<Level34Form> forms{{3, {1, 0}}, {3, {0, 1}}, {4, {1, 0, 0}}, {4, {0, 1, 0}}, {4, {0, 0, 1}}};
    for (const auto& f : forms)
        for (long p : {5L, 7L})
            for (long n : {1L, 2L}) {
                CongruenceReport r = check_level34_statement(f, p, n);
                o.expect(r.verdict == Verdict::Pass, "level " + std::to_string(f.level) + " statement " + r.statement +
                                                         ": " + to_string(r.verdict));
                o.expect(r.target == (p == 7 ? n : n / 2), r.statement + ": wrong target");
                ++verdicts;
            }
    o.detail = fmt::format("{} verdicts, A_p = 0 throughout", verdicts);
    return o;
}

Outcome multipliers()
{
    Outcome o;
    MultcheckSummary s = run_multiplier_suite(200, 20240601);
    o.expect(s.conventions_passing == 1, fmt::format("{} conventions pass the eta oracle", s.conventions_passing));
    long checks = 0;
    for (const auto& line : s.lines) {
        o.expect(line.failures == 0, line.check + ": " + line.first_failure);
        ++checks;
    }
    o.expect(s.pass(), "suite reports failure");
    o.detail = fmt::format("{} checks, 200 random matrices per sampled check", checks);
    return o;
}

Outcome properties()
{
    using testing_support::random_series;
    Outcome o;
    std::mt19937_64 rng(1234);
    long cases = 0;
    for (int trial = 0; trial < 30; ++trial, ++cases) {
        FracSeries a = random_series(rng, 6, -2, 40, trial % 2 == 0);
        FracSeries b = random_series(rng, 6, 1, 40, trial % 3 == 0);
        FracSeries c = random_series(rng, 6, -5, 40);
        o.expect(a * b == b * a && a + b == b + a, "commutativity");
        o.expect((a * b) * c == a * (b * c), "associativity");
        o.expect(agree_on_window(a * (b + c), a * b + a * c), "distributivity");
        o.expect(mul(a, c) == detail::mul_reference(a, c), "fast product differs from the reference");
        FracSeries inv = invert(a);
        o.expect(agree_on_window(a * inv, one(6, 1000)), "invert round trip");
        for (long m : {2L, 3L, 5L, 7L}) o.expect(u_operator(v_operator(a, m), m) == a, "U(m) V(m) != id");
        auto pipeline = [](const FracSeries& x, const FracSeries& y) { return u_operator(x * invert(y) - x * x, 5); };
        o.expect(agree_on_window(pipeline(a.truncated(20), b.truncated(25)), pipeline(a, b)), "precision monotonicity");
    }
    for (long p : {2L, 3L, 5L, 7L})
        for (long n = 1; n <= 3; ++n, ++cases) {
            FracSeries f = random_series(rng, 4, -3, 50 * lpow(p, static_cast<unsigned>(n)));
            HeckeSpec s{4, 3, p, n, 1};
            o.expect(agree_on_window(u_power_via_t(f, s), u_power(f, p, n)), fmt::format("U via T, p={} n={}", p, n));
        }
    const long prec = 80;
    FracSeries e4 = eisenstein(4, prec);
    FracSeries e6 = eisenstein(6, prec);
    FracSeries delta = retick(named_form({GeneratorName::Delta}, prec), 1);
    o.expect(eisenstein(8, prec) == e4 * e4, "E8 = E4^2");
    o.expect(pow(e4, 3) - pow(e6, 2) == Rational(1728) * delta, "E4^3 - E6^2 = 1728 Delta");
    o.expect(agree_on_window(named_form({GeneratorName::J}, prec) * delta, pow(e4, 3)), "j Delta = E4^3");
    cases += 3;
    o.detail = fmt::format("{} property cases", cases);
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"golden coefficient reproduction", golden_reproduction},
        {"Hecke identity suite", hecke_identities},
        {"congruence suite", congruences},
        {"multiplier suite", multipliers},
        {"property suite", properties},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        fmt::print("[{}] criterion {}: {} ({})\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail);
        for (const auto& p : o.problems) fmt::print("       {}\n", p);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
