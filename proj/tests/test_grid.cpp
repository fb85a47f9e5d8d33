#include "heckegrid/error.hpp"
#include "heckegrid/generators.hpp"
#include "heckegrid/grid.hpp"

#include <doctest.h>

using namespace heckegrid;

namespace {

std::vector<GridParams> all_families()
{
    std::vector<GridParams> out{derive_params(1, 6, 4, 0), derive_params(1, 4, 4, 0), derive_params(1, 8, 8, 0),
                                derive_params(1, 10, 12, 0)};
    for (int level : {2, 3, 4})
        for (int sign : {1, -1}) out.push_back(derive_params(level, 0, 0, sign));
    return out;
}

} // namespace

TEST_CASE("parameter derivation")
{
    GridParams a = derive_params(1, 6, 4, 0);
    CHECK(a.t == 6);
    CHECK(a.s == 1);
    CHECK(a.ell == 1);
    CHECK(a.weight == 4);
    CHECK(seed_index(a) == 1);
    CHECK(side_b_seed_index(a) == 5);

    GridParams b = derive_params(1, 4, 4, 0);
    CHECK(b.ell == 0);
    CHECK(b.weight == 2);
    CHECK(side_b_seed_index(b) == -1);

    CHECK(derive_params(2, 0, 0, 1).t == 4);
    CHECK(side_b_seed_index(derive_params(2, 0, 0, 1)) == 3);
    CHECK(derive_params(3, 0, 0, -1).t == 3);
    CHECK(side_b_seed_index(derive_params(4, 0, 0, 1)) == 2);
    CHECK(side_b_seed_index(derive_params(4, 0, 0, -1)) == -1);

    CHECK_THROWS_AS(derive_params(5, 0, 0, 1), DomainError);
    CHECK_THROWS_AS(derive_params(1, 6, 3, 0), DomainError);
    CHECK_THROWS_AS(derive_params(2, 0, 0, 0), DomainError);
    CHECK_THROWS_AS(derive_params(1, 5, 4, 0), DomainError);
}

TEST_CASE("ladder sides and residues")
{
    GridParams g = derive_params(1, 6, 4, 0);
    CHECK(side_of(g, 7) == Side::A);
    CHECK(side_of(g, 11) == Side::B);
    CHECK_FALSE(side_of(g, 3).has_value());
    GridParams m = derive_params(2, 0, 0, -1);
    CHECK(side_of(m, 5) == Side::A);
    CHECK(side_of(m, 3) == Side::B);
    CHECK(side_of(m, -1) == Side::B);
}

TEST_CASE("Hauptmodul of each level")
{
    FracSeries h = hauptmodul(derive_params(4, 0, 0, 1), 12);
    CHECK(h.tick() == 3);
    CHECK(h.coeff(-3) == 1);
    CHECK(h.coeff(3) == 276);
    CHECK(h.coeff(6) == 2048);
    FracSeries j = hauptmodul(derive_params(1, 6, 4, 0), 30);
    CHECK(j.tick() == 6);
    CHECK(j.coeff(0) == 744);
}

TEST_CASE("every constructed form satisfies the family invariants")
{
    for (const GridParams& g : all_families()) {
        CAPTURE(describe(g));
        GridFamily fam = build_family(g, 30, 40);
        CHECK(fam.forms.size() >= 10);
        for (const auto& [d, f] : fam.forms) {
            CAPTURE(d);
            CHECK(check_invariants(g, d, f).empty());
            CHECK(f.prec() >= 40);
            CHECK(f.coeff(-d) == 1);
            CHECK(fam.lcd.at(d) == 1);
        }
    }
}

TEST_CASE("invariant checker rejects broken forms")
{
    GridParams g = derive_params(1, 6, 4, 0);
    GridFamily fam = build_family(g, 7, 20);
    const FracSeries& f7 = fam.form(7);
    FracSeries::Coeffs c = f7.coeffs();
    c[-1] = 3;  // forbidden gap position
    CHECK_FALSE(check_invariants(g, 7, FracSeries(6, f7.prec(), c)).empty());
    c = f7.coeffs();
    c[-7] = 2;  // not monic
    CHECK_FALSE(check_invariants(g, 7, FracSeries(6, f7.prec(), c)).empty());
    c = f7.coeffs();
    c[6] = 1;  // wrong residue class
    CHECK_FALSE(check_invariants(g, 7, FracSeries(6, f7.prec(), c)).empty());
    CHECK_FALSE(check_invariants(g, 7, FracSeries(3, 20, {{-7, 1}})).empty());
    CHECK_THROWS_AS(fam.form(13), PrecisionError);
}

TEST_CASE("rebuilding at higher precision reproduces every reported coefficient")
{
    for (const GridParams& g : all_families()) {
        CAPTURE(describe(g));
        GridFamily low = build_family(g, 20, 25);
        GridFamily high = build_family(g, 20, 60);
        GridFamily extended = extend_ladder(low, 26, 60);
        REQUIRE(low.forms.size() <= high.forms.size());
        for (const auto& [d, f] : low.forms) {
            CAPTURE(d);
            CHECK(agree_on_window(f, high.form(d)));
            CHECK(agree_on_window(extended.form(d), high.form(d)));
        }
    }
}

TEST_CASE("level one with ell = 0: f_{-s} is eta^r")
{
    for (auto [k, r] : {std::pair{4, 4}, std::pair{8, 8}}) {
        GridParams g = derive_params(1, k, r, 0);
        REQUIRE(g.ell == 0);
        GridFamily fam = build_family(g, 1, 40);
        FracSeries etar = retick(eta_quotient({{1, r}}, 10), g.t);
        CHECK(agree_on_window(fam.form(-g.s), etar));
    }
}

TEST_CASE("spot values of the printed examples")
{
    GridFamily one = build_family(derive_params(1, 6, 4, 0), 13, 20);
    const FracSeries& f7 = one.form(7);
    CHECK(f7.coeff(-7) == 1);
    CHECK(f7.coeff(5) == -71750);
    CHECK(f7.coeff(11) == -86461760);
    CHECK(f7.coeff(17) == Integer("-13650854021"));
    CHECK(one.form(13).coeff(5) == -2401000);
    CHECK(one.form(1).coeff(5) == -500);

    GridFamily three = build_family(derive_params(3, 0, 0, 1), 5, 10);
    const FracSeries& f5 = three.form(5);
    CHECK(f5.coeff(1) == -65);
    CHECK(f5.coeff(4) == -18880);
    CHECK(f5.coeff(7) == -718550);

    GridFamily two = build_family(derive_params(2, 0, 0, -1), 3, 12);
    const FracSeries& f3 = two.form(3);
    CHECK(f3.coeff(-3) == 1);
    CHECK(f3.coeff(1) == 0);
    CHECK(f3.coeff(5) == 4365);
    CHECK(f3.coeff(9) == 87512);
}

TEST_CASE("seed descriptions")
{
    GridFamily fam = build_family(derive_params(2, 0, 0, 1), 5, 10);
    CHECK(fam.seeds.at(1) == "F_2^- / h_2");
    CHECK(fam.seeds.at(3) == "F_2^+ F_2^- / h_2^3");
    CHECK(fam.seeds.size() == 2);
}
