#include "heckegrid/generators.hpp"

#include "heckegrid/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace heckegrid {

namespace {

constexpr std::array kEisensteinWeights{2, 4, 6, 8, 10, 14};

struct NameEntry {
    GeneratorName name;
    const char* spelling;
};

constexpr std::array kNames{
    NameEntry{GeneratorName::Eta, "eta"},         NameEntry{GeneratorName::Delta, "delta"},
    NameEntry{GeneratorName::J, "j"},             NameEntry{GeneratorName::J2, "j2"},
    NameEntry{GeneratorName::J3, "j3"},           NameEntry{GeneratorName::J4, "j4"},
    NameEntry{GeneratorName::H2small, "h2"},      NameEntry{GeneratorName::H3small, "h3"},
    NameEntry{GeneratorName::H4small, "h4"},      NameEntry{GeneratorName::F2plus, "f2plus"},
    NameEntry{GeneratorName::F2minus, "f2minus"}, NameEntry{GeneratorName::F3plus, "f3plus"},
    NameEntry{GeneratorName::F3minus, "f3minus"}, NameEntry{GeneratorName::F4plus, "f4plus"},
    NameEntry{GeneratorName::F4minus, "f4minus"}, NameEntry{GeneratorName::G2plus, "g2plus"},
    NameEntry{GeneratorName::G2minus, "g2minus"}, NameEntry{GeneratorName::G3minus, "g3minus"},
    NameEntry{GeneratorName::G4minus, "g4minus"}, NameEntry{GeneratorName::H3cap, "h3cap"},
    NameEntry{GeneratorName::H4cap, "h4cap"},
};

void require_prec(long prec)
{
    if (prec < 1) throw PrecisionError("generator precision must be at least 1, got " + std::to_string(prec));
}

// Series in q known below q^prec, coarsened, cut to exactly prec * tick and checked integral.
FracSeries finalize(const FracSeries& f, long prec, const char* what)
{
    FracSeries c = coarsen(f);
    if (c.prec() < prec * c.tick())
        throw PrecisionError(std::string(what) + ": internal precision underflow");
    c = c.truncated(prec * c.tick());
    if (c.denominator_lcm() != 1) throw IntegralityError(std::string(what) + ": non-integral coefficient");
    return c;
}

FracSeries aligned_add(const FracSeries& f, const FracSeries& g)
{
    long t = std::lcm(f.tick(), g.tick());
    return add(retick(f, t), retick(g, t));
}

FracSeries aligned_mul(const FracSeries& f, const FracSeries& g)
{
    long t = std::lcm(f.tick(), g.tick());
    return mul(retick(f, t), retick(g, t));
}

// sum_i c_i E_k(a_i z) at tick 1, known below q^prec.
FracSeries eisenstein_combination(int k, const std::vector<std::pair<long, Rational>>& terms, long prec)
{
    FracSeries acc(1, prec);
    for (const auto& [a, c] : terms) {
        FracSeries e = v_operator(eisenstein(k, ceil_div(prec, a)), a).truncated(prec);
        acc = add(acc, scale(e, c));
    }
    return acc;
}

FracSeries base_form(GeneratorName name, long prec)
{
    using G = GeneratorName;
    switch (name) {
    case G::Delta:
        return eta_quotient({{1, 24}}, prec);
    case G::J: {
        FracSeries e4 = eisenstein(4, prec + 1);
        return aligned_mul(pow(e4, 3), eta_quotient({{1, -24}}, prec));
    }
    case G::J2: {
        FracSeries a = eta_quotient({{1, 24}, {2, -24}}, prec);
        FracSeries b = eta_quotient({{1, -24}, {2, 24}}, prec);
        return aligned_add(aligned_add(a, monomial(1, 0, 24, prec)), scale(b, 4096));
    }
    case G::J3: {
        FracSeries a = eta_quotient({{1, 12}, {3, -12}}, prec);
        FracSeries b = eta_quotient({{1, -12}, {3, 12}}, prec);
        return aligned_add(aligned_add(a, monomial(1, 0, 12, prec)), scale(b, 729));
    }
    case G::J4: {
        FracSeries a = eta_quotient({{1, 8}, {4, -8}}, prec);
        FracSeries b = eta_quotient({{1, -8}, {4, 8}}, prec);
        return aligned_add(aligned_add(a, monomial(1, 0, 8, prec)), scale(b, 256));
    }
    case G::H2small:
        return eta_quotient({{1, 2}, {2, 2}}, prec);
    case G::H3small:
        return eta_quotient({{1, 2}, {3, 2}}, prec);
    case G::H4small:
        return eta_quotient({{2, 4}}, prec);
    case G::H3cap:
        return eta_quotient({{3, 2}, {9, 2}}, prec);
    case G::H4cap:
        return eta_quotient({{6, 4}}, prec);
    case G::F2plus:
        return eisenstein_combination(4, {{2, Rational(4, 5)}, {1, Rational(1, 5)}}, prec);
    case G::F2minus:
        return eisenstein_combination(4, {{2, Rational(4, 3)}, {1, Rational(-1, 3)}}, prec);
    case G::F3plus:
        return eisenstein_combination(4, {{3, Rational(9, 10)}, {1, Rational(1, 10)}}, prec);
    case G::F3minus:
        return eisenstein_combination(4, {{3, Rational(9, 8)}, {1, Rational(-1, 8)}}, prec);
    case G::F4plus:
        return eisenstein_combination(
            4, {{4, Rational(16, 15)}, {1, Rational(1, 15)}, {2, Rational(-2, 15)}}, prec);
    case G::F4minus:
        return eisenstein_combination(4, {{4, Rational(16, 15)}, {1, Rational(-1, 15)}}, prec);
    case G::G2plus:
        return eisenstein_combination(6, {{2, Rational(8, 9)}, {1, Rational(1, 9)}}, prec);
    case G::G2minus:
        return eisenstein_combination(6, {{2, Rational(8, 7)}, {1, Rational(-1, 7)}}, prec);
    case G::G3minus:
        return eisenstein_combination(2, {{3, Rational(3, 2)}, {1, Rational(-1, 2)}}, prec);
    case G::G4minus:
        return eisenstein_combination(2, {{4, Rational(4, 3)}, {1, Rational(-1, 3)}}, prec);
    case G::Eta:
    case G::Eisenstein:
        break;
    }
    throw DomainError("base_form: unhandled generator");
}

} // namespace

std::string generator_name(const GeneratorId& id)
{
    std::string base;
    if (id.name == GeneratorName::Eisenstein) {
        base = "e" + std::to_string(id.weight);
    } else {
        auto it = std::find_if(kNames.begin(), kNames.end(), [&](const NameEntry& e) { return e.name == id.name; });
        base = it->spelling;
    }
    if (id.scale != 1) base += "@" + std::to_string(id.scale);
    return base;
}

GeneratorId parse_generator(std::string_view text)
{
    GeneratorId id{GeneratorName::Eta};
    auto at = text.find('@');
    std::string_view base = text.substr(0, at);
    if (at != std::string_view::npos) {
        std::string_view s = text.substr(at + 1);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id.scale);
        if (ec != std::errc() || ptr != s.data() + s.size() || id.scale < 1)
            throw DomainError("bad generator scale in '" + std::string(text) + "'");
    }
    for (const auto& e : kNames) {
        if (base == e.spelling) {
            id.name = e.name;
            return id;
        }
    }
    if (base.size() >= 2 && base.front() == 'e') {
        int k = 0;
        auto [ptr, ec] = std::from_chars(base.data() + 1, base.data() + base.size(), k);
        if (ec == std::errc() && ptr == base.data() + base.size() &&
            std::find(kEisensteinWeights.begin(), kEisensteinWeights.end(), k) != kEisensteinWeights.end()) {
            id.name = GeneratorName::Eisenstein;
            id.weight = k;
            return id;
        }
    }
    throw DomainError("unknown generator '" + std::string(text) + "'");
}

Rational bernoulli(unsigned n)
{
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    std::vector<Rational> b{Rational(1)};
    for (unsigned m = 1; m <= n; ++m) {
        Rational s = 0;
        Integer binom = 1; // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            s += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b.push_back(-s / Rational(m + 1));
    }
    return b[n];
}

std::vector<Integer> euler_product_power(long r, long terms)
{
    std::vector<Integer> g(static_cast<std::size_t>(std::max(terms, 0L)));
    if (terms <= 0) return g;
    // Nonzero coefficients of prod (1 - q^n): (-1)^m at the generalized pentagonal numbers.
    std::vector<std::pair<long, int>> pent;
    for (long m = 1;; ++m) {
        long k1 = m * (3 * m - 1) / 2;
        long k2 = m * (3 * m + 1) / 2;
        if (k1 >= terms) break;
        int sign = (m % 2 == 0) ? 1 : -1;
        pent.emplace_back(k1, sign);
        if (k2 < terms) pent.emplace_back(k2, sign);
    }
    // n g_n = sum_{k=1}^{n} ((r + 1) k - n) p_k g_{n-k}  for g = P^r, P(0) = 1.
    g[0] = 1;
    Integer s;
    for (long n = 1; n < terms; ++n) {
        s = 0;
        for (const auto& [k, sign] : pent) {
            if (k > n) break;
            long w = ((r + 1) * k - n) * sign;
            const Integer& prev = g[static_cast<std::size_t>(n - k)];
            if (w >= 0)
                mpz_addmul_ui(s.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(w));
            else
                mpz_submul_ui(s.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(-w));
        }
        mpz_divexact_ui(g[static_cast<std::size_t>(n)].get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(n));
    }
    return g;
}

FracSeries eta(long prec)
{
    require_prec(prec);
    return retick(eta_quotient({{1, 1}}, prec), 24);
}

FracSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, long prec)
{
    require_prec(prec);
    long shift = 0; // in units of q^{1/24}
    for (const auto& [a, r] : factors) {
        if (a < 1) throw DomainError("eta_quotient: scale must be positive");
        shift += a * r;
    }
    // The product of Euler factors is needed below q^{prec - shift/24}.
    const long terms = ceil_div(24 * prec - shift, 24);
    FracSeries body = one(1, std::max(terms, 1L));
    for (const auto& [a, r] : factors) {
        if (r == 0) continue;
        auto c = euler_product_power(r, ceil_div(terms, a));
        FracSeries::Coeffs coeffs;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) coeffs.emplace_hint(coeffs.end(), static_cast<long>(i), Rational(c[i]));
        FracSeries part(1, static_cast<long>(c.size()), std::move(coeffs));
        body = mul(body, v_operator(part, a).truncated(terms));
    }
    body = retick(body, 24);
    FracSeries::Coeffs shifted;
    for (const auto& [n, c] : body.coeffs())
        if (n + shift < 24 * prec) shifted.emplace_hint(shifted.end(), n + shift, c);
    FracSeries out(24, 24 * prec, std::move(shifted));
    return finalize(out, prec, "eta_quotient");
}

FracSeries eisenstein(int k, long prec)
{
    require_prec(prec);
    if (std::find(kEisensteinWeights.begin(), kEisensteinWeights.end(), k) == kEisensteinWeights.end())
        throw DomainError("unsupported Eisenstein weight " + std::to_string(k));
    const Rational factor = -Rational(2 * k) / bernoulli(static_cast<unsigned>(k));
    std::vector<Integer> sigma(static_cast<std::size_t>(prec));
    Integer dp;
    for (long d = 1; d < prec; ++d) {
        Integer base = d;
        mpz_pow_ui(dp.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k - 1));
        for (long m = d; m < prec; m += d) sigma[static_cast<std::size_t>(m)] += dp;
    }
    FracSeries::Coeffs coeffs;
    coeffs.emplace(0, Rational(1));
    for (long n = 1; n < prec; ++n) coeffs.emplace_hint(coeffs.end(), n, factor * Rational(sigma[static_cast<std::size_t>(n)]));
    return finalize(FracSeries(1, prec, std::move(coeffs)), prec, "eisenstein");
}

FracSeries named_form(const GeneratorId& id, long prec)
{
    require_prec(prec);
    if (id.scale < 1) throw DomainError("generator scale must be positive");
    const long a = id.scale;
    const long inner = ceil_div(prec, a);
    FracSeries f = [&] {
        switch (id.name) {
        case GeneratorName::Eta:
            return eta_quotient({{1, 1}}, inner);
        case GeneratorName::Eisenstein:
            return eisenstein(id.weight, inner);
        default:
            return base_form(id.name, inner);
        }
    }();
    return finalize(rescale(f, a), prec, generator_name(id).c_str());
}

} // namespace heckegrid
