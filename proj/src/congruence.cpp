#include "heckegrid/congruence.hpp"

#include "heckegrid/error.hpp"
#include "heckegrid/generators.hpp"
#include "heckegrid/hecke.hpp"

#include <algorithm>

namespace heckegrid {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

ValuationProfile valuation_profile(const FracSeries& f, long p)
{
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (f.is_zero() && f.prec() <= 0) throw PrecisionError("valuation profile of a series with an empty window");
    ValuationProfile out;
    out.prec = f.prec();
    for (const auto& [n, c] : f.coeffs()) {
        long v = valuation(c, p);
        if (v < 0 || mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(p)))
            throw IntegralityError("coefficient " + to_string(c) + " at numerator " + std::to_string(n) +
                                   " is not " + std::to_string(p) + "-integral");
        out.valuations.emplace(n, v);
        out.min = out.min ? std::min(*out.min, v) : v;
    }
    return out;
}

long congruence_target(const GridParams& g, long p, long n)
{
    const bool one = mod(p, g.t) == 1;
    if (g.level == 1) {
        if (g.ell != 0 || one) return (g.weight - 1) * n;
        if (g.weight == 2) return n / 2;
        throw DomainError("no congruence is claimed for " + describe(g) + " at p=" + std::to_string(p));
    }
    if (g.level == 2) return mod(p, 4) == 1 ? n : n / 2;
    return mod(p, 3) == 1 ? n : n / 2;
}

CongruenceReport judge(const FracSeries& image, bool source_is_zero, long p, long n, long target, long min_nonzero)
{
    CongruenceReport r;
    r.p = p;
    r.n = n;
    r.target = target;
    r.profile = valuation_profile(image, p);
    r.nonzero = static_cast<long>(r.profile.valuations.size());
    if (source_is_zero) r.verdict = Verdict::Pass;
    else if (r.nonzero < min_nonzero) r.verdict = Verdict::Inconclusive;
    else r.verdict = *r.profile.min >= target ? Verdict::Pass : Verdict::Fail;
    return r;
}

FracSeries integral_seed(const GridFamily& family)
{
    return rescale(family.form(seed_index(family.params)), family.params.t);
}

long congruence_seed_prec(const GridParams& params, long p, long n, long terms)
{
    // F_1 lives in one residue class mod t, so the window is t times the term count.
    return lpow(p, static_cast<unsigned>(n)) * terms * params.t;
}

GridFamily family_for_congruence(const GridParams& params, long p, long n_max, long terms)
{
    check_admissible(hecke_spec(params, p, std::max(n_max, 1L)));
    const long prec = congruence_seed_prec(params, p, std::max(n_max, 1L), terms);
    return build_family(params, seed_index(params), prec, prec);
}

namespace {

std::string power(long p, long e)
{
    return std::to_string(p) + "^" + std::to_string(e);
}

} // namespace

CongruenceReport check_family_congruence(const GridFamily& family, long p, long n, long min_nonzero)
{
    const GridParams& g = family.params;
    check_admissible(hecke_spec(g, p, n));
    const long target = congruence_target(g, p, n);
    FracSeries f = integral_seed(family);
    CongruenceReport r = judge(u_power(f, p, n), f.is_zero(), p, n, target, min_nonzero);
    r.statement = "F_1 | U(" + power(p, n) + ") = 0 mod " + power(p, target) + " for " + describe(g);
    return r;
}

long estimate_Ap(const GridFamily& family, long p, long n_max)
{
    long a = 0;
    for (long n = 1; n <= n_max; ++n) {
        CongruenceReport r = check_family_congruence(family, p, n, 0);
        if (r.profile.min) a = std::max(a, r.target - *r.profile.min);
    }
    return a;
}

FracSeries u_power_from_identities(const GridFamily& family, long p, long n)
{
    const GridParams& g = family.params;
    check_admissible(hecke_spec(g, p, n));
    std::vector<FracSeries> u{integral_seed(family)};
    for (long m = 1; m <= n; ++m) {
        FracSeries next = rescale(identity_rhs(family, identity_shape(family, p, m)), g.t);
        for (long j = 1; j <= m; ++j) {
            Rational c(ipow(p, static_cast<unsigned long>(j * (g.weight - 1))));
            next = sub(next, scale(v_operator(u[static_cast<std::size_t>(m - j)], lpow(p, static_cast<unsigned>(j))), c));
        }
        u.push_back(std::move(next));
    }
    return u.back();
}

GridFamily family_for_identity_route(const GridParams& params, long p, long n, long terms)
{
    check_admissible(hecke_spec(params, p, n));
    const long target = lpow(p, static_cast<unsigned>(n)) * seed_index(params);
    // As for the direct route, the image lives in one residue class mod t.
    const long window = terms * params.t;
    return build_family(params, target, window, std::max(window, target + 1));
}

CongruenceReport check_level34_statement(const Level34Form& f, long p, long n, long terms, long min_nonzero)
{
    if (f.level != 3 && f.level != 4) throw DomainError("the level 3/4 statement needs N in {3, 4}");
    const std::size_t dim = f.level == 3 ? 2 : 3;
    if (f.coefficients.size() != dim)
        throw DomainError("M_4(Gamma_0(" + std::to_string(f.level) + ")) needs " + std::to_string(dim) +
                          " coefficients, got " + std::to_string(f.coefficients.size()));
    if (p < 5 || !is_prime(p)) throw DomainError("the level 3/4 statement needs a prime p >= 5, got " + std::to_string(p));
    if (n < 1) throw DomainError("n must be at least 1");

    // Supports are sparse (exponents 2 mod 3, or 5 mod 6 for the E_4(2z) part).
    const long window = lpow(p, static_cast<unsigned>(n)) * terms * 6;
    const long q = window + 3;
    using G = GeneratorName;
    std::vector<GeneratorId> basis;
    if (f.level == 3) basis = {{G::F3plus, 0, 3}, {G::F3minus, 0, 3}};
    else basis = {{G::F4plus, 0, 3}, {G::F4minus, 0, 3}, {GeneratorName::Eisenstein, 4, 6}};

    FracSeries num(1, q);
    for (std::size_t i = 0; i < dim; ++i)
        if (f.coefficients[i] != 0) num = add(num, scale(named_form(basis[i], q), f.coefficients[i]));
    valuation_profile(num, p);  // f itself must be p-integral
    const FracSeries h = named_form(GeneratorId{f.level == 3 ? G::H3cap : G::H4cap}, q + 2);
    const FracSeries big_f = mul(num, invert(h)).truncated(window);

    const long target = mod(p, 3) == 1 ? n : n / 2;
    const bool zero = std::all_of(f.coefficients.begin(), f.coefficients.end(), [](const Rational& c) { return c == 0; });
    CongruenceReport r = judge(u_power(big_f, p, n), zero, p, n, target, min_nonzero);
    r.statement = "(f(3z) / H_" + std::to_string(f.level) + "(z)) | U(" + power(p, n) + ") = 0 mod " + power(p, target);
    r.note = "U(p^n) is applied to f(3z)/H_N(z); the displayed statement omits it.";
    if (f.level == 4)
        r.note += " H_4(z) = eta^4(6z) = h_4(3z), so f(3z)/H_4(z) is (f/h_4)(3z) and the pairing is consistent.";
    return r;
}

} // namespace heckegrid
