#include "heckegrid/multcheck.hpp"

#include "heckegrid/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace heckegrid {

namespace {

std::string show(const IntegerMatrix2x2& g)
{
    return "(" + std::to_string(g.a) + " " + std::to_string(g.b) + "; " + std::to_string(g.c) + " " +
           std::to_string(g.d) + ")";
}

class Tally {
public:
    explicit Tally(std::string name) { line_.check = std::move(name); }

    void record(bool ok, const std::function<std::string()>& detail)
    {
        ++line_.samples;
        if (ok) return;
        if (line_.failures++ == 0) line_.first_failure = detail();
    }

    MultcheckLine done() { return std::move(line_); }

private:
    MultcheckLine line_;
};

// sqrt(j(x, y z)) sqrt(j(y, z)) / sqrt(j(x y, z)) with principal branches; always +-1.
int half_weight_cocycle(const IntegerMatrix2x2& x, const IntegerMatrix2x2& y)
{
    const std::complex<double> z(0.137, 1.29);
    auto j = [](const IntegerMatrix2x2& g, std::complex<double> w) {
        return static_cast<double>(g.c) * w + static_cast<double>(g.d);
    };
    auto act = [](const IntegerMatrix2x2& g, std::complex<double> w) {
        return (static_cast<double>(g.a) * w + static_cast<double>(g.b)) /
               (static_cast<double>(g.c) * w + static_cast<double>(g.d));
    };
    std::complex<double> s = std::sqrt(j(x, act(y, z))) * std::sqrt(j(y, z)) / std::sqrt(j(x * y, z));
    return s.real() > 0 ? 1 : -1;
}

IntegerMatrix2x2 fricke_group_element(std::int64_t level, Gamma0Sampler& sample, std::mt19937_64& rng)
{
    IntegerMatrix2x2 g = sample();
    return (rng() & 1U) ? g * fricke(level) : g;
}

bool divides(std::int64_t order, std::int64_t bound)
{
    return bound % order == 0;
}

} // namespace

bool MultcheckSummary::pass() const
{
    if (conventions_passing != 1 || !(chosen == JacobiConvention{})) return false;
    for (const auto& l : lines)
        if (l.failures != 0 || l.samples == 0) return false;
    return true;
}

MultcheckSummary run_multiplier_suite(int samples, std::uint64_t seed, double tol)
{
    MultcheckSummary out;
    out.conventions_passing = calibrate_eta_convention(samples, seed, tol, out.chosen);
    std::mt19937_64 rng(seed);
    const MultiplierId eta{MultiplierFamily::EtaFull};

    {
        Tally t("eta oracle (|entries| <= 50)");
        for (int i = 0; i < samples; ++i) {
            IntegerMatrix2x2 g = random_sl2z(rng, 50);
            auto r = numeric_eta_oracle(g, balanced_point(g), tol);
            t.record(r.pass, [&] { return show(g) + ": error " + std::to_string(r.error); });
        }
        out.lines.push_back(t.done());
    }
    {
        Tally t("eta character up to the weight-1/2 cocycle");
        Tally four("eta^4 equals eta^4 power");
        for (int i = 0; i < samples; ++i) {
            IntegerMatrix2x2 x = random_sl2z(rng, 30), y = random_sl2z(rng, 30);
            RootOfUnity lhs = evaluate(eta, x * y);
            RootOfUnity rhs = evaluate(eta, x) * evaluate(eta, y) * RootOfUnity(2, half_weight_cocycle(x, y) > 0 ? 0 : 1);
            t.record(lhs == rhs, [&] { return show(x) + " * " + show(y); });
            RootOfUnity e4 = evaluate(MultiplierId{MultiplierFamily::EtaFourPower}, x);
            four.record(e4 == evaluate(eta, x).pow(4), [&] { return show(x); });
        }
        out.lines.push_back(t.done());
        out.lines.push_back(four.done());
    }
    for (int power = 1; power <= 5; ++power) {
        const MultiplierId id{MultiplierFamily::EtaFourPower, 1, power};
        Tally t("character " + to_string(id));
        Tally trivial("trivial on Gamma_0(6,6): " + to_string(id));
        Gamma0Sampler g66(6, 6, seed + static_cast<std::uint64_t>(power));
        for (int i = 0; i < samples; ++i) {
            IntegerMatrix2x2 x = random_sl2z(rng, 30), y = random_sl2z(rng, 30);
            RootOfUnity v = evaluate(id, x * y);
            t.record(v == evaluate(id, x) * evaluate(id, y) && divides(v.reduced().order(), order_bound(id)),
                     [&] { return show(x) + " * " + show(y); });
            IntegerMatrix2x2 g = g66();
            trivial.record(evaluate(id, g).is_one(), [&] { return show(g); });
        }
        out.lines.push_back(t.done());
        out.lines.push_back(trivial.done());
    }

    struct LevelCase {
        MultiplierFamily family;
        std::int64_t level, lower, upper;
    };
    const std::array cases{LevelCase{MultiplierFamily::Level2, 2, 8, 4}, LevelCase{MultiplierFamily::Level3, 3, 9, 3},
                           LevelCase{MultiplierFamily::Level4, 4, 12, 3}};
    for (const auto& c : cases) {
        for (int sign : {1, -1}) {
            const MultiplierId id{c.family, sign, 1};
            const std::string name = to_string(id);
            Gamma0Sampler group(c.level, 1, seed ^ static_cast<std::uint64_t>(c.level * 7 + sign + 3), 2000);
            Tally t("character on the Fricke group: " + name);
            for (int i = 0; i < samples; ++i) {
                IntegerMatrix2x2 x = fricke_group_element(c.level, group, rng);
                IntegerMatrix2x2 y = fricke_group_element(c.level, group, rng);
                RootOfUnity v = evaluate(id, x * y);
                t.record(v == evaluate(id, x) * evaluate(id, y) && divides(v.reduced().order(), order_bound(id)),
                         [&] { return show(x) + " * " + show(y); });
            }
            out.lines.push_back(t.done());
            Tally w("value on W_N: " + name);
            w.record(evaluate(id, fricke(c.level)) == RootOfUnity(2, sign > 0 ? 0 : 1),
                     [&] { return to_string(evaluate(id, fricke(c.level))); });
            out.lines.push_back(w.done());
        }
        const MultiplierId id{c.family, 1, 1};
        Gamma0Sampler sub(c.lower, c.upper, seed + static_cast<std::uint64_t>(c.lower));
        Tally trivial("trivial on Gamma_0(" + std::to_string(c.lower) + "," + std::to_string(c.upper) +
                      "): " + to_string(id));
        for (int i = 0; i < samples; ++i) {
            IntegerMatrix2x2 g = sub();
            trivial.record(evaluate(id, g).is_one(), [&] { return show(g); });
        }
        out.lines.push_back(trivial.done());

        // h_2 = eta^2(z) eta^2(2z), h_3 = eta^2(z) eta^2(3z), h_4 = eta^4(2z).
        Tally prod("agrees with eta products: " + to_string(id));
        Gamma0Sampler g0(c.level, 1, seed + 101 + static_cast<std::uint64_t>(c.level), 2000);
        for (int i = 0; i < samples; ++i) {
            IntegerMatrix2x2 g = g0();
            RootOfUnity expected;
            if (c.level == 4) {
                expected = evaluate(eta, IntegerMatrix2x2{g.a, 2 * g.b, g.c / 2, g.d}).pow(4);
            } else {
                IntegerMatrix2x2 scaled{g.a, c.level * g.b, g.c / c.level, g.d};
                expected = evaluate(eta, g).pow(2) * evaluate(eta, scaled).pow(2);
            }
            prod.record(evaluate(id, g) == expected, [&] { return show(g); });
        }
        out.lines.push_back(prod.done());
    }
    return out;
}

} // namespace heckegrid
