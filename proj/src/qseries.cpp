#include "heckegrid/qseries.hpp"

#include "heckegrid/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace heckegrid {

namespace {

void require_same_tick(const FracSeries& f, const FracSeries& g, const char* op)
{
    if (f.tick() != g.tick())
        throw TickError(std::string(op) + ": tick mismatch (" + std::to_string(f.tick()) + " vs " +
                        std::to_string(g.tick()) + ")");
}

long product_prec(const FracSeries& f, const FracSeries& g)
{
    return std::min(f.prec() + g.order_bound(), g.prec() + f.order_bound());
}

} // namespace

FracSeries::FracSeries(long tick, long prec) : tick_(tick), prec_(prec)
{
    if (tick < 1) throw TickError("tick must be positive, got " + std::to_string(tick));
}

FracSeries::FracSeries(long tick, long prec, Coeffs coeffs) : FracSeries(tick, prec)
{
    std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
    if (!coeffs.empty() && coeffs.rbegin()->first >= prec)
        throw PrecisionError("coefficient at numerator " + std::to_string(coeffs.rbegin()->first) +
                             " lies outside the knowledge bound " + std::to_string(prec));
    coeffs_ = std::move(coeffs);
}

Rational FracSeries::coeff(long n) const
{
    if (n >= prec_)
        throw PrecisionError("coefficient at numerator " + std::to_string(n) + " is unknown (prec " +
                             std::to_string(prec_) + ")");
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::optional<long> FracSeries::leading() const
{
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

FracSeries FracSeries::truncated(long new_prec) const
{
    if (new_prec >= prec_) return *this;
    Coeffs kept(coeffs_.begin(), coeffs_.lower_bound(new_prec));
    return FracSeries(tick_, new_prec, std::move(kept));
}

Integer FracSeries::denominator_lcm() const
{
    DenominatorLcm l;
    for (const auto& kv : coeffs_) l.add(kv.second);
    return l.value();
}

bool operator==(const FracSeries& f, const FracSeries& g)
{
    if (f.is_zero() && g.is_zero()) return true;
    return f.tick_ == g.tick_ && f.prec_ == g.prec_ && f.coeffs_ == g.coeffs_;
}

FracSeries monomial(long tick, long n, const Rational& c, long prec)
{
    if (n >= prec)
        throw PrecisionError("monomial at numerator " + std::to_string(n) + " needs prec > n, got " +
                             std::to_string(prec));
    FracSeries::Coeffs m;
    m.emplace(n, c);
    return FracSeries(tick, prec, std::move(m));
}

FracSeries add(const FracSeries& f, const FracSeries& g)
{
    require_same_tick(f, g, "add");
    long prec = std::min(f.prec(), g.prec());
    FracSeries::Coeffs out(f.coeffs().begin(), f.coeffs().lower_bound(prec));
    for (auto it = g.coeffs().begin(); it != g.coeffs().end() && it->first < prec; ++it) {
        auto [pos, inserted] = out.try_emplace(it->first, it->second);
        if (!inserted) {
            pos->second += it->second;
            if (pos->second == 0) out.erase(pos);
        }
    }
    return FracSeries(f.tick(), prec, std::move(out));
}

FracSeries neg(const FracSeries& f)
{
    FracSeries::Coeffs out;
    for (const auto& [n, c] : f.coeffs()) out.emplace_hint(out.end(), n, -c);
    return FracSeries(f.tick(), f.prec(), std::move(out));
}

FracSeries sub(const FracSeries& f, const FracSeries& g)
{
    return add(f, neg(g));
}

FracSeries scale(const FracSeries& f, const Rational& c)
{
    if (c == 0) return FracSeries(f.tick(), f.prec());
    FracSeries::Coeffs out;
    for (const auto& [n, a] : f.coeffs()) out.emplace_hint(out.end(), n, a * c);
    return FracSeries(f.tick(), f.prec(), std::move(out));
}

namespace detail {

FracSeries mul_reference(const FracSeries& f, const FracSeries& g)
{
    require_same_tick(f, g, "mul");
    long prec = product_prec(f, g);
    FracSeries::Coeffs out;
    for (const auto& [i, a] : f.coeffs()) {
        for (const auto& [j, b] : g.coeffs()) {
            if (i + j >= prec) break;
            out[i + j] += a * b;
        }
    }
    return FracSeries(f.tick(), prec, std::move(out));
}

} // namespace detail

// Scales both operands to integers by their denominator lcms, convolves in mpz and
// divides once at the end. Canonical rationals make the result identical to the
// reference path.
FracSeries mul(const FracSeries& f, const FracSeries& g)
{
    require_same_tick(f, g, "mul");
    long prec = product_prec(f, g);
    if (f.is_zero() || g.is_zero()) return FracSeries(f.tick(), prec);

    auto to_integers = [](const FracSeries& s, Integer& lcm) {
        lcm = s.denominator_lcm();
        std::vector<std::pair<long, Integer>> v;
        v.reserve(s.coeffs().size());
        for (const auto& [n, c] : s.coeffs()) {
            Integer x = lcm / c.get_den();
            x *= c.get_num();
            v.emplace_back(n, std::move(x));
        }
        return v;
    };
    Integer lf, lg;
    auto a = to_integers(f, lf);
    auto b = to_integers(g, lg);

    long base = a.front().first + b.front().first;
    if (base >= prec) return FracSeries(f.tick(), prec);
    std::vector<Integer> acc(static_cast<std::size_t>(prec - base));
    for (const auto& [i, x] : a) {
        if (i + b.front().first >= prec) break;
        for (const auto& [j, y] : b) {
            long n = i + j;
            if (n >= prec) break;
            mpz_addmul(acc[static_cast<std::size_t>(n - base)].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
    Integer den = lf * lg;
    FracSeries::Coeffs out;
    for (std::size_t k = 0; k < acc.size(); ++k) {
        if (acc[k] == 0) continue;
        Rational r(acc[k], den);
        r.canonicalize();
        out.emplace_hint(out.end(), base + static_cast<long>(k), std::move(r));
    }
    return FracSeries(f.tick(), prec, std::move(out));
}

FracSeries invert(const FracSeries& f, std::optional<long> prec_out)
{
    auto lead = f.leading();
    if (!lead) throw DivisionByZeroError("invert: zero series");
    const long v = *lead;
    const long max_prec = f.prec() - 2 * v;
    const long prec = prec_out.value_or(max_prec);
    if (prec > max_prec)
        throw PrecisionError("invert: requested prec " + std::to_string(prec) + " exceeds the supported " +
                             std::to_string(max_prec));
    if (prec <= -v) return FracSeries(f.tick(), prec);

    const Rational c = f.coeffs().begin()->second;
    // u = f / (c q^v) = 1 + sum_{i>0} u_i q^{i/t}; the inverse lives on multiples of the
    // gcd of u's support.
    const long rel = prec + v; // relative window of 1/u
    std::vector<std::pair<long, Rational>> u;
    long step = 0;
    for (auto it = std::next(f.coeffs().begin()); it != f.coeffs().end(); ++it) {
        long i = it->first - v;
        if (i >= rel) break;
        u.emplace_back(i, it->second / c);
        step = std::gcd(step, i);
    }
    if (step == 0) step = rel; // u == 1

    bool integral = std::all_of(u.begin(), u.end(), [](const auto& e) { return e.second.get_den() == 1; });
    FracSeries::Coeffs out;
    const Rational cinv = 1 / c;
    if (integral) {
        std::vector<Integer> w(static_cast<std::size_t>((rel - 1) / step + 1));
        std::vector<std::pair<long, Integer>> ui;
        for (auto& [i, x] : u) ui.emplace_back(i / step, Integer(x.get_num()));
        w[0] = 1;
        for (std::size_t m = 1; m < w.size(); ++m) {
            Integer s = 0;
            for (const auto& [i, x] : ui) {
                if (static_cast<std::size_t>(i) > m) break;
                mpz_addmul(s.get_mpz_t(), x.get_mpz_t(), w[m - static_cast<std::size_t>(i)].get_mpz_t());
            }
            w[m] = -s;
        }
        for (std::size_t m = 0; m < w.size(); ++m)
            if (w[m] != 0) out.emplace_hint(out.end(), -v + static_cast<long>(m) * step, Rational(w[m]) * cinv);
    } else {
        std::vector<Rational> w(static_cast<std::size_t>((rel - 1) / step + 1));
        w[0] = 1;
        for (std::size_t m = 1; m < w.size(); ++m) {
            Rational s = 0;
            for (const auto& [i, x] : u) {
                if (static_cast<std::size_t>(i / step) > m) break;
                s += x * w[m - static_cast<std::size_t>(i / step)];
            }
            w[m] = -s;
        }
        for (std::size_t m = 0; m < w.size(); ++m)
            if (w[m] != 0) out.emplace_hint(out.end(), -v + static_cast<long>(m) * step, w[m] * cinv);
    }
    return FracSeries(f.tick(), prec, std::move(out));
}

FracSeries pow(const FracSeries& f, unsigned long m)
{
    if (m == 0) {
        long window = f.prec() - f.order_bound();
        if (window <= 0) throw PrecisionError("pow: zero exponent of a series with an empty relative window");
        return one(f.tick(), window);
    }
    FracSeries result = f;
    FracSeries base = f;
    bool started = false;
    while (m > 0) {
        if (m & 1UL) {
            result = started ? mul(result, base) : base;
            started = true;
        }
        m >>= 1;
        if (m > 0) base = mul(base, base);
    }
    return result;
}

FracSeries u_operator(const FracSeries& f, long p)
{
    if (p < 1) throw DomainError("U operator index must be positive");
    long prec = ceil_div(f.prec(), p);
    FracSeries::Coeffs out;
    for (const auto& [n, c] : f.coeffs())
        if (mod(n, p) == 0) out.emplace_hint(out.end(), n / p, c);
    return FracSeries(f.tick(), prec, std::move(out));
}

FracSeries v_operator(const FracSeries& f, long m)
{
    if (m < 1) throw DomainError("V operator index must be positive");
    FracSeries::Coeffs out;
    for (const auto& [n, c] : f.coeffs()) out.emplace_hint(out.end(), n * m, c);
    return FracSeries(f.tick(), f.prec() * m, std::move(out));
}

FracSeries retick(const FracSeries& f, long tick)
{
    if (tick < 1) throw TickError("tick must be positive");
    if (tick == f.tick()) return f;
    if (tick % f.tick() == 0) {
        long r = tick / f.tick();
        FracSeries::Coeffs out;
        for (const auto& [n, c] : f.coeffs()) out.emplace_hint(out.end(), n * r, c);
        return FracSeries(tick, f.prec() * r, std::move(out));
    }
    if (f.tick() % tick == 0) {
        long r = f.tick() / tick;
        FracSeries::Coeffs out;
        for (const auto& [n, c] : f.coeffs()) {
            if (mod(n, r) != 0)
                throw TickError("retick: numerator " + std::to_string(n) + " is not representable at tick " +
                                std::to_string(tick));
            out.emplace_hint(out.end(), n / r, c);
        }
        return FracSeries(tick, ceil_div(f.prec(), r), std::move(out));
    }
    throw TickError("retick: ticks " + std::to_string(f.tick()) + " and " + std::to_string(tick) +
                    " are not comparable by divisibility");
}

FracSeries coarsen(const FracSeries& f)
{
    long g = f.tick();
    for (const auto& kv : f.coeffs()) {
        g = std::gcd(g, kv.first);
        if (g == 1) break;
    }
    return retick(f, f.tick() / g);
}

bool agree_on_window(const FracSeries& f, const FracSeries& g)
{
    require_same_tick(f, g, "agree_on_window");
    long prec = std::min(f.prec(), g.prec());
    return f.truncated(prec).coeffs() == g.truncated(prec).coeffs();
}

} // namespace heckegrid
