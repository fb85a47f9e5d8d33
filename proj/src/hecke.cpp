#include "heckegrid/hecke.hpp"

#include "heckegrid/error.hpp"

#include <algorithm>

namespace heckegrid {

HeckeSpec hecke_spec(const GridParams& params, long p, long n)
{
    return HeckeSpec{params.t, params.weight, p, n, params.level};
}

bool is_admissible(const HeckeSpec& s)
{
    return s.n >= 1 && s.p > 2 && is_prime(s.p) && s.level % s.p != 0 && mod(s.p * s.p, 2 * s.t) == 1;
}

void check_admissible(const HeckeSpec& s)
{
    if (is_admissible(s)) return;
    throw DomainError("p=" + std::to_string(s.p) + ", n=" + std::to_string(s.n) + " is not admissible for level " +
                      std::to_string(s.level) + ", t=" + std::to_string(s.t) +
                      " (need an odd prime p not dividing N with p^2 = 1 mod 2t, n >= 1)");
}

FracSeries t_operator(const FracSeries& f, const HeckeSpec& spec)
{
    const long p = spec.p;
    if (f.tick() != spec.t)
        throw TickError("T(p) for tick " + std::to_string(spec.t) + " applied to a tick " + std::to_string(f.tick()) +
                        " series");
    const long prec = ceil_div(f.prec(), p);
    const Integer c = ipow(p, static_cast<unsigned long>(spec.weight - 1));
    FracSeries::Coeffs out;
    for (const auto& [m, a] : f.coeffs()) {
        if (m % p == 0 && m / p < prec) out[m / p] += a;
        if (p * m < prec) out[p * m] += c * a;
    }
    return FracSeries(f.tick(), prec, std::move(out));
}

FracSeries t_power_operator(const FracSeries& f, const HeckeSpec& spec)
{
    if (spec.n < 0) throw DomainError("T(p^n) needs n >= 0");
    if (spec.n == 0) return f;
    const Rational c(ipow(spec.p, static_cast<unsigned long>(spec.weight - 1)));
    FracSeries prev = f;
    FracSeries cur = t_operator(f, spec);
    for (long j = 1; j < spec.n; ++j) {
        FracSeries next = sub(t_operator(cur, spec), scale(prev, c));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

FracSeries u_power(const FracSeries& f, long p, long n)
{
    FracSeries g = f;
    for (long j = 0; j < n; ++j) g = u_operator(g, p);
    return g;
}

FracSeries u_power_via_t(const FracSeries& f, const HeckeSpec& spec)
{
    if (spec.n == 0) return f;
    // U(p^m) for m < n, each through the same decomposition.
    std::vector<FracSeries> u{f};
    for (long m = 1; m <= spec.n; ++m) {
        HeckeSpec sm = spec;
        sm.n = m;
        FracSeries g = t_power_operator(f, sm);
        for (long j = 1; j <= m; ++j) {
            Rational c(ipow(spec.p, static_cast<unsigned long>(j * (spec.weight - 1))));
            FracSeries term = v_operator(u[static_cast<std::size_t>(m - j)], lpow(spec.p, static_cast<unsigned>(j)));
            g = sub(g, scale(term, c));
        }
        u.push_back(std::move(g));
    }
    return u.back();
}

long identity_window(const GridParams& params, long d, long positions)
{
    auto side = side_of(params, d);
    if (!side) throw DomainError("f_" + std::to_string(d) + " is not a ladder index of " + describe(params));
    long first = gap_bound(params, *side);
    first += mod(-d - first, params.t);
    return first + (positions - 1) * params.t + 1;
}

GridFamily family_for_identity(const GridParams& params, long p, long n, long positions)
{
    check_admissible(hecke_spec(params, p, n));
    const long target = lpow(p, static_cast<unsigned>(n)) * seed_index(params);
    const long window = identity_window(params, target, positions);
    return build_family(params, target, window, lpow(p, static_cast<unsigned>(n)) * window);
}

IdentityShape identity_shape(const GridFamily& family, long p, long n)
{
    const GridParams& g = family.params;
    IdentityShape shape;
    const long pn = lpow(p, static_cast<unsigned>(n));
    shape.seed = seed_index(g);
    shape.target = pn * shape.seed;
    shape.eigenvalue = ipow(p, static_cast<unsigned long>((g.weight - 1) * n));
    const long r = mod(pn, g.t);
    if (g.level == 1) {
        if (r != 1 && r != g.t - 1) throw DomainError("p^n is neither 1 nor -1 modulo t=" + std::to_string(g.t));
        if (r != 1 && g.ell == 0) shape.correction_index = -g.s;
    } else if (g.sign < 0 && r != 1) {
        shape.correction_index = -1;
    }
    if (shape.correction_index) shape.correction_coefficient = family.form(shape.seed).coeff(shape.target);
    return shape;
}

FracSeries identity_rhs(const GridFamily& family, const IdentityShape& shape)
{
    FracSeries rhs = scale(family.form(shape.target), Rational(shape.eigenvalue));
    if (shape.correction_index)
        rhs = add(rhs, scale(family.form(*shape.correction_index), shape.correction_coefficient));
    return rhs;
}

IdentityVerdict check_grid_identity(const GridFamily& family, long p, long n, long min_positions)
{
    const GridParams& g = family.params;
    const HeckeSpec spec = hecke_spec(g, p, n);
    check_admissible(spec);

    const IdentityShape shape = identity_shape(family, p, n);
    IdentityVerdict v;
    v.params = g;
    v.p = p;
    v.n = n;
    v.seed = shape.seed;
    v.target = shape.target;
    v.eigenvalue = shape.eigenvalue;
    v.correction_index = shape.correction_index;
    v.correction_coefficient = shape.correction_coefficient;
    v.lhs = t_power_operator(family.form(v.seed), spec);
    v.rhs = identity_rhs(family, shape);

    v.window = std::min(v.lhs.prec(), v.rhs.prec());
    const long first = identity_window(g, v.target, 1) - 1;
    v.compared_positions = v.window > first ? (v.window - 1 - first) / g.t + 1 : 0;
    if (v.compared_positions < min_positions)
        throw PrecisionError("identity window for f_" + std::to_string(v.seed) + " | T(" + std::to_string(p) + "^" +
                             std::to_string(n) + ") shows only " + std::to_string(v.compared_positions) +
                             " free coefficients of f_" + std::to_string(v.target) + " (need " +
                             std::to_string(min_positions) + ")");

    FracSeries diff = sub(v.lhs, v.rhs);
    if (!diff.is_zero()) v.first_discrepancy = *diff.leading();
    v.pass = !v.first_discrepancy;
    return v;
}

} // namespace heckegrid
