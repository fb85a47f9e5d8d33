#include "heckegrid/congruence.hpp"
#include "heckegrid/error.hpp"
#include "heckegrid/hecke.hpp"

#include <doctest.h>

using namespace heckegrid;

TEST_CASE("valuation profiles")
{
    FracSeries unit(1, 10, {{-1, 1}, {2, 3}, {5, -7}});
    ValuationProfile a = valuation_profile(scale(unit, 5), 5);
    CHECK(a.min == 1);
    CHECK(a.valuations.size() == 3);
    CHECK(valuation_profile(scale(unit, 125), 5).min == 3);
    ValuationProfile z = valuation_profile(FracSeries(1, 10), 5);
    CHECK_FALSE(z.min.has_value());
    CHECK_THROWS_AS(valuation_profile(FracSeries(1, 0), 5), PrecisionError);
    CHECK_THROWS_AS(valuation_profile(FracSeries(1, 5, {{1, Rational(1, 5)}}), 5), IntegralityError);
    CHECK(valuation_profile(FracSeries(1, 5, {{1, Rational(25, 3)}}), 5).min == 2);
    CHECK_THROWS_AS(valuation_profile(unit, 6), DomainError);
}

TEST_CASE("claimed exponents")
{
    GridParams a = derive_params(1, 4, 4, 0);
    CHECK(congruence_target(a, 7, 1) == 1);
    CHECK(congruence_target(a, 7, 2) == 2);
    CHECK(congruence_target(a, 5, 2) == 1);
    CHECK(congruence_target(a, 5, 1) == 0);
    GridParams b = derive_params(1, 6, 4, 0);
    CHECK(congruence_target(b, 5, 1) == 3);
    CHECK(congruence_target(b, 5, 2) == 6);
    CHECK_THROWS_AS(congruence_target(derive_params(1, 8, 8, 0), 5, 1), DomainError);
    GridParams two = derive_params(2, 0, 0, 1);
    CHECK(congruence_target(two, 5, 1) == 1);
    CHECK(congruence_target(two, 3, 2) == 1);
    CHECK(congruence_target(two, 3, 1) == 0);
    GridParams three = derive_params(3, 0, 0, -1);
    CHECK(congruence_target(three, 7, 2) == 2);
    CHECK(congruence_target(three, 5, 3) == 1);
}

TEST_CASE("verdicts need enough evidence")
{
    FracSeries thin(1, 10, {{1, 5}, {2, 5}});
    CHECK(judge(thin, false, 5, 1, 1).verdict == Verdict::Inconclusive);
    CHECK(judge(thin, false, 5, 1, 1, 2).verdict == Verdict::Pass);
    CHECK(judge(thin, false, 5, 1, 2, 2).verdict == Verdict::Fail);
    CHECK(judge(FracSeries(1, 10), true, 5, 1, 9).verdict == Verdict::Pass);
    CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}

TEST_CASE("weight two, level one: F_1 | U(p^n)")
{
    GridParams g = derive_params(1, 4, 4, 0);
    SUBCASE("p = 7")
    {
        GridFamily fam = family_for_congruence(g, 7, 2);
        for (long n : {1L, 2L}) {
            CongruenceReport r = check_family_congruence(fam, 7, n);
            CHECK(r.target == n);
            CHECK(r.nonzero >= 10);
            CHECK(r.verdict == Verdict::Pass);
        }
        CHECK(estimate_Ap(fam, 7, 2) == 0);
        CHECK(estimate_Ap(fam, 7, 0) == 0);
    }
    SUBCASE("p = 5")
    {
        GridFamily fam = family_for_congruence(g, 5, 2);
        CongruenceReport r = check_family_congruence(fam, 5, 2);
        CHECK(r.target == 1);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(estimate_Ap(fam, 5, 2) == 0);
    }
}

TEST_CASE("G_1 = E_6(6z) / eta^4(6z): U(5) to 5^3 and U(25) to 5^6")
{
    GridParams g = derive_params(1, 6, 4, 0);
    GridFamily fam = family_for_congruence(g, 5, 2);
    CongruenceReport r1 = check_family_congruence(fam, 5, 1);
    CHECK(r1.verdict == Verdict::Pass);
    CHECK(*r1.profile.min >= 3);
    CongruenceReport r2 = check_family_congruence(fam, 5, 2);
    CHECK(r2.verdict == Verdict::Pass);
    CHECK(*r2.profile.min >= 6);
    CHECK(estimate_Ap(fam, 5, 2) == 0);
}

TEST_CASE("levels two to four")
{
    for (int sign : {1, -1}) {
        GridParams g = derive_params(2, 0, 0, sign);
        GridFamily f5 = family_for_congruence(g, 5, 1);
        CHECK(check_family_congruence(f5, 5, 1).verdict == Verdict::Pass);
        GridFamily f3 = family_for_congruence(g, 3, 2);
        CongruenceReport r = check_family_congruence(f3, 3, 2);
        CHECK(r.target == 1);
        CHECK(r.verdict == Verdict::Pass);
    }
    for (int level : {3, 4})
        for (int sign : {1, -1}) {
            GridParams g = derive_params(level, 0, 0, sign);
            for (long p : {5L, 7L}) {
                GridFamily fam = family_for_congruence(g, p, 2);
                for (long n : {1L, 2L}) CHECK(check_family_congruence(fam, p, n).verdict == Verdict::Pass);
                CHECK(estimate_Ap(fam, p, 2) == 0);
            }
        }
}

TEST_CASE("the identity route reproduces U(p^n) without applying operators to the seed")
{
    struct Case {
        GridParams g;
        long p, n;
    };
    std::vector<Case> cases{{derive_params(1, 4, 4, 0), 7, 2}, {derive_params(1, 4, 4, 0), 5, 2},
                            {derive_params(1, 6, 4, 0), 5, 1}, {derive_params(2, 0, 0, -1), 3, 2},
                            {derive_params(3, 0, 0, -1), 5, 2}, {derive_params(4, 0, 0, 1), 7, 1}};
    for (const auto& c : cases) {
        CAPTURE(describe(c.g));
        CAPTURE(c.p);
        GridFamily fam = family_for_identity_route(c.g, c.p, c.n);
        FracSeries via = u_power_from_identities(fam, c.p, c.n);
        FracSeries direct = u_power(integral_seed(fam), c.p, c.n);
        CHECK(via.prec() >= 10);
        CHECK(agree_on_window(via, direct));
        long target = congruence_target(c.g, c.p, c.n);
        CHECK(judge(via, false, c.p, c.n, target).verdict == Verdict::Pass);
    }
}

TEST_CASE("doubling the window reproduces the verdict")
{
    GridParams g = derive_params(3, 0, 0, 1);
    GridFamily a = family_for_congruence(g, 7, 1, 30);
    GridFamily b = family_for_congruence(g, 7, 1, 60);
    CongruenceReport ra = check_family_congruence(a, 7, 1);
    CongruenceReport rb = check_family_congruence(b, 7, 1);
    CHECK(ra.verdict == rb.verdict);
    CHECK(*rb.profile.min <= *ra.profile.min);
    for (const auto& [n, v] : ra.profile.valuations) CHECK(rb.profile.valuations.at(n) == v);
}

TEST_CASE("the level 3 and 4 statement")
{
    CongruenceReport a = check_level34_statement({3, {1, 0}}, 7, 1);
    CHECK(a.target == 1);
    CHECK(a.verdict == Verdict::Pass);
    CHECK_FALSE(a.note.empty());
    CongruenceReport b = check_level34_statement({4, {0, 1, 0}}, 5, 2);
    CHECK(b.target == 1);
    CHECK(b.verdict == Verdict::Pass);
    CongruenceReport z = check_level34_statement({3, {0, 0}}, 5, 1);
    CHECK(z.verdict == Verdict::Pass);
    CongruenceReport mix = check_level34_statement({4, {Rational(1), Rational(-3), Rational(2)}}, 7, 2);
    CHECK(mix.verdict == Verdict::Pass);

    CHECK_THROWS_AS(check_level34_statement({5, {1, 0}}, 7, 1), DomainError);
    CHECK_THROWS_AS(check_level34_statement({3, {1}}, 7, 1), DomainError);
    CHECK_THROWS_AS(check_level34_statement({3, {1, 0}}, 3, 1), DomainError);
    CHECK_THROWS_AS(check_level34_statement({3, {Rational(1, 7), 0}}, 7, 1), IntegralityError);
}

TEST_CASE("inadmissible primes are rejected")
{
    CHECK_THROWS_AS(family_for_congruence(derive_params(1, 4, 4, 0), 3, 1), DomainError);
    CHECK_THROWS_AS(family_for_congruence(derive_params(3, 0, 0, 1), 3, 1), DomainError);
}
