#include "heckegrid/grid.hpp"

#include "heckegrid/error.hpp"
#include "heckegrid/generators.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace heckegrid {

namespace {

constexpr std::array kLevelOneK{4, 6, 8, 10, 14};
constexpr std::array kLevelOneR{4, 8, 12, 16, 20};
constexpr std::array kCuspfreeWeights{0, 4, 6, 8, 10, 14};

template <class A>
bool contains(const A& arr, int x)
{
    return std::find(arr.begin(), arr.end(), x) != arr.end();
}

FracSeries gen(GeneratorName name, long qprec, long scale = 1)
{
    return named_form(GeneratorId{name, 0, scale}, qprec);
}

FracSeries at_tick(const FracSeries& f, long t)
{
    if (t % f.tick() != 0) throw TickError("seed tick " + std::to_string(f.tick()) + " does not divide " + std::to_string(t));
    return retick(f, t);
}

FracSeries product(const FracSeries& f, const FracSeries& g)
{
    long t = std::lcm(f.tick(), g.tick());
    return mul(retick(f, t), retick(g, t));
}

// Generated at a q-bound a few units past the target, then cut to exactly `prec`.
FracSeries finish_seed(const FracSeries& f, long t, long prec, const char* what)
{
    FracSeries g = at_tick(f, t);
    if (g.prec() < prec) throw ConstructionError(std::string(what) + ": seed precision underflow");
    return g.truncated(prec);
}

struct LevelGenerators {
    GeneratorName h, fplus, fminus, gminus;
};

LevelGenerators level_generators(int level)
{
    switch (level) {
    case 2:
        return {GeneratorName::H2small, GeneratorName::F2plus, GeneratorName::F2minus, GeneratorName::G2minus};
    case 3:
        return {GeneratorName::H3small, GeneratorName::F3plus, GeneratorName::F3minus, GeneratorName::G3minus};
    default:
        return {GeneratorName::H4small, GeneratorName::F4plus, GeneratorName::F4minus, GeneratorName::G4minus};
    }
}

} // namespace

GridParams derive_params(int level, int k, int r, int sign)
{
    GridParams p;
    p.level = level;
    if (level == 1) {
        if (!contains(kLevelOneK, k)) throw DomainError("level one needs k in {4,6,8,10,14}, got " + std::to_string(k));
        if (!contains(kLevelOneR, r)) throw DomainError("level one needs r in {4,8,12,16,20}, got " + std::to_string(r));
        p.k = k;
        p.r = r;
        long g = std::gcd(r, 24);
        p.s = r / g;
        p.t = 24 / g;
        int found = 0;
        for (long ell = 0; ell <= 2; ++ell) {
            if (contains(kCuspfreeWeights, static_cast<int>(12 * ell + k - r))) {
                p.ell = ell;
                ++found;
            }
        }
        if (found != 1)
            throw DomainError("no unique ell with 12 ell + k - r in {0,4,6,8,10,14} for k=" + std::to_string(k) +
                              ", r=" + std::to_string(r));
        p.weight = k - r / 2;
        return p;
    }
    if (level < 2 || level > 4) throw DomainError("level must be 1, 2, 3 or 4, got " + std::to_string(level));
    if (sign != 1 && sign != -1) throw DomainError("levels 2-4 need sign +1 or -1");
    p.sign = sign;
    p.t = level == 2 ? 4 : 3;
    p.s = 1;
    p.weight = 2;
    return p;
}

std::string describe(const GridParams& p)
{
    if (p.level == 1)
        return "level 1, k=" + std::to_string(p.k) + ", r=" + std::to_string(p.r) + " (t=" + std::to_string(p.t) +
               ", s=" + std::to_string(p.s) + ", ell=" + std::to_string(p.ell) +
               ", weight=" + std::to_string(p.weight) + ")";
    return "level " + std::to_string(p.level) + ", sign " + (p.sign > 0 ? "+" : "-") + " (t=" + std::to_string(p.t) +
           ", weight 2)";
}

long seed_index(const GridParams& p)
{
    return p.level == 1 ? p.s : 1;
}

long side_b_seed_index(const GridParams& p)
{
    if (p.level == 1) return p.t * p.ell - p.s;
    if (p.sign < 0) return -1;
    return p.level == 2 ? 3 : 2;
}

std::optional<Side> side_of(const GridParams& p, long d)
{
    const long a = seed_index(p);
    const long b = side_b_seed_index(p);
    if (d > 0 && mod(d - a, p.t) == 0) return Side::A;
    if (mod(d - b, p.t) == 0 && d >= b) return Side::B;
    return std::nullopt;
}

long gap_bound(const GridParams& p, Side side)
{
    if (side == Side::A) return 1;
    if (p.level == 1) return p.s - p.t * p.ell + 1;
    if (p.sign > 0) return 1;
    return p.level == 2 ? 5 : 4;
}

long support_residue(const GridParams& p, Side side)
{
    return side == Side::A ? mod(-seed_index(p), p.t) : mod(-side_b_seed_index(p), p.t);
}

FracSeries hauptmodul(const GridParams& p, long prec)
{
    static constexpr std::array names{GeneratorName::J, GeneratorName::J2, GeneratorName::J3, GeneratorName::J4};
    long qprec = std::max(ceil_div(prec, p.t), 1L);
    FracSeries j = named_form(GeneratorId{names[static_cast<std::size_t>(p.level - 1)]}, qprec);
    return retick(j, p.t).truncated(prec);
}

const FracSeries& GridFamily::form(long d) const
{
    auto it = forms.find(d);
    if (it == forms.end())
        throw PrecisionError("family " + describe(params) + " has no member f_" + std::to_string(d));
    return it->second;
}

std::map<long, FracSeries> seed_forms(const GridParams& p, long prec)
{
    const long t = p.t;
    const long q = std::max(ceil_div(prec, t), 1L) + 3;
    std::map<long, FracSeries> out;
    if (p.level == 1) {
        // E_k / eta^r.
        FracSeries a = product(eisenstein(p.k, q + 1), eta_quotient({{1, -p.r}}, q));
        out.emplace(seed_index(p), finish_seed(a, t, prec, "E_k/eta^r"));
        const long b_index = side_b_seed_index(p);
        if (b_index != seed_index(p)) {
            // E_{12 ell + k - r} eta^r / Delta^ell, with E_0 = 1.
            const int w = static_cast<int>(12 * p.ell + p.k - p.r);
            FracSeries eta_part = eta_quotient({{1, p.r - 24 * p.ell}}, q);
            FracSeries b = w == 0 ? eta_part : product(eisenstein(w, q + 3), eta_part);
            out.emplace(b_index, finish_seed(b, t, prec, "E eta^r / Delta^ell"));
        }
        return out;
    }
    const auto g = level_generators(p.level);
    FracSeries h = gen(g.h, q);
    FracSeries hinv = invert(h);
    FracSeries fplus = gen(g.fplus, q);
    FracSeries fminus = gen(g.fminus, q);
    // f_1^{+-} = F^{-+} / h_N.
    out.emplace(1, finish_seed(product(p.sign > 0 ? fminus : fplus, hinv), t, prec, "f_1"));
    if (p.sign < 0) {
        out.emplace(-1, finish_seed(h, t, prec, "h_N"));
    } else if (p.level == 2) {
        // f_3^+ = F_2^+ F_2^- / h_2^3.
        FracSeries num = product(fplus, fminus);
        out.emplace(3, finish_seed(product(num, pow(hinv, 3)), t, prec, "f_3^+"));
    } else {
        // f_2^+ = F_N^- G_N^- / h_N^2.
        FracSeries num = product(fminus, gen(g.gminus, q));
        out.emplace(2, finish_seed(product(num, pow(hinv, 2)), t, prec, "f_2^+"));
    }
    return out;
}

namespace {

std::map<long, std::string> seed_descriptions(const GridParams& p)
{
    std::map<long, std::string> d;
    if (p.level == 1) {
        d[seed_index(p)] = "E_" + std::to_string(p.k) + " / eta^" + std::to_string(p.r);
        if (side_b_seed_index(p) != seed_index(p)) {
            long w = 12 * p.ell + p.k - p.r;
            std::string e = w == 0 ? "" : "E_" + std::to_string(w) + " * ";
            std::string delta = p.ell == 0 ? "" : (p.ell == 1 ? " / Delta" : " / Delta^" + std::to_string(p.ell));
            d[side_b_seed_index(p)] = e + "eta^" + std::to_string(p.r) + delta;
        }
        return d;
    }
    const std::string n = std::to_string(p.level);
    const std::string h = "h_" + n;
    if (p.sign > 0) {
        d[1] = "F_" + n + "^- / " + h;
        d[side_b_seed_index(p)] = p.level == 2 ? "F_2^+ F_2^- / h_2^3" : "F_" + n + "^- G_" + n + "^- / " + h + "^2";
    } else {
        d[1] = "F_" + n + "^+ / " + h;
        d[-1] = h;
    }
    return d;
}

} // namespace

std::vector<std::string> check_invariants(const GridParams& p, long d, const FracSeries& f)
{
    std::vector<std::string> bad;
    auto side = side_of(p, d);
    if (!side) {
        bad.push_back("index " + std::to_string(d) + " is on neither ladder");
        return bad;
    }
    if (f.tick() != p.t) bad.push_back("tick " + std::to_string(f.tick()) + " != " + std::to_string(p.t));
    auto lead = f.leading();
    if (!lead || *lead != -d || f.coeffs().begin()->second != 1) {
        bad.push_back("leading term is not q^{" + std::to_string(-d) + "/" + std::to_string(p.t) + "} with coefficient 1");
        return bad;
    }
    const long gap = gap_bound(p, *side);
    for (auto it = std::next(f.coeffs().begin()); it != f.coeffs().end(); ++it) {
        if (mod(it->first + d, p.t) != 0) {
            bad.push_back("numerator " + std::to_string(it->first) + " outside the residue class");
            break;
        }
        if (it->first < gap) {
            bad.push_back("numerator " + std::to_string(it->first) + " violates the gap bound " + std::to_string(gap));
            break;
        }
    }
    return bad;
}

GridFamily extend_ladder(const GridFamily& family, long d_max, long prec_out)
{
    const GridParams& p = family.params;
    const long t = p.t;
    const long seeds[2] = {seed_index(p), side_b_seed_index(p)};
    const bool two_sides = seeds[0] != seeds[1];

    // Window bookkeeping per rung: P(d) = min(P_seed - (d - d_seed), P_J - d + t).
    long top[2] = {seeds[0], seeds[1]};
    long need_seed = prec_out;
    long need_j = 0;
    for (int i = 0; i < (two_sides ? 2 : 1); ++i) {
        if (d_max < seeds[i]) continue;
        top[i] = seeds[i] + (d_max - seeds[i]) / t * t;
        need_seed = std::max(need_seed, prec_out + top[i] - seeds[i]);
        need_j = std::max(need_j, prec_out + top[i] - t);
    }

    GridFamily out;
    out.params = p;
    out.seeds = seed_descriptions(p);
    bool regenerate = false;
    for (int i = 0; i < (two_sides ? 2 : 1); ++i) {
        auto it = family.forms.find(seeds[i]);
        if (it == family.forms.end() || it->second.prec() < need_seed) regenerate = true;
    }
    if (regenerate) {
        for (auto& [d, f] : seed_forms(p, need_seed)) {
            auto it = family.forms.find(d);
            out.forms.emplace(d, (it != family.forms.end() && it->second.prec() > f.prec()) ? it->second : f);
        }
    } else {
        for (int i = 0; i < (two_sides ? 2 : 1); ++i) out.forms.emplace(seeds[i], family.forms.at(seeds[i]));
    }
    for (const auto& [d, f] : out.forms) {
        auto bad = check_invariants(p, d, f);
        if (!bad.empty()) throw ConstructionError("seed f_" + std::to_string(d) + ": " + bad.front());
    }

    if (d_max >= std::min(seeds[0], seeds[1]) + t) {
        const FracSeries j = hauptmodul(p, std::max(need_j, t));
        for (int i = 0; i < (two_sides ? 2 : 1); ++i) {
            const Side side = i == 0 ? Side::A : Side::B;
            const long gap = gap_bound(p, side);
            FracSeries prev = out.forms.at(seeds[i]);
            for (long d = seeds[i] + t; d <= d_max; d += t) {
                FracSeries g = mul(j, prev);
                // Unitriangular elimination: every forbidden numerator n = -d' is the
                // leading exponent of an earlier rung f_{d'}.
                for (long n = -d + t; n < gap; n += t) {
                    Rational c = g.coeff(n);
                    if (c == 0) continue;
                    auto pivot = out.forms.find(-n);
                    if (pivot == out.forms.end())
                        throw ConstructionError("no pivot f_" + std::to_string(-n) + " while building f_" + std::to_string(d));
                    g = sub(g, scale(pivot->second, c));
                }
                auto bad = check_invariants(p, d, g);
                if (!bad.empty()) throw ConstructionError("f_" + std::to_string(d) + ": " + bad.front());
                if (g.prec() < prec_out)
                    throw PrecisionError("f_" + std::to_string(d) + " reached only prec " + std::to_string(g.prec()));
                out.forms.insert_or_assign(d, g);
                prev = std::move(g);
            }
        }
    }
    // Non-seed rungs are reported at exactly prec_out; seeds keep what they carry.
    for (auto& [d, f] : out.forms) {
        if (d != seeds[0] && d != seeds[1]) f = f.truncated(prec_out);
        out.lcd[d] = f.denominator_lcm();
    }
    return out;
}

GridFamily build_family(const GridParams& p, long d_max, long prec_out, long seed_prec)
{
    GridFamily seedonly;
    seedonly.params = p;
    for (auto& [d, f] : seed_forms(p, std::max(seed_prec, prec_out))) seedonly.forms.emplace(d, std::move(f));
    return extend_ladder(seedonly, d_max, prec_out);
}

} // namespace heckegrid
