#include "heckegrid/multiplier.hpp"

#include "heckegrid/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace heckegrid {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw DomainError("matrix entry overflow");
    return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw DomainError("matrix entry overflow");
    return r;
}

std::int64_t pmod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// x * y mod m without overflow for |x|, |y| < 2^62.
std::int64_t mulmod(std::int64_t x, std::int64_t y, std::int64_t m)
{
    return static_cast<std::int64_t>((static_cast<__int128>(pmod(x, m)) * pmod(y, m)) % m);
}

int sgn_nonneg(std::int64_t x) { return x < 0 ? -1 : 1; }

// (-1)^{[(sgn x - 1)/2][(sgn y - 1)/2]}: -1 exactly when both are negative.
int sign_factor(std::int64_t x, std::int64_t y)
{
    return (sgn_nonneg(x) < 0 && sgn_nonneg(y) < 0) ? -1 : 1;
}

// ad - bc = 1 and level | c.
void require_gamma0(const IntegerMatrix2x2& g, std::int64_t level)
{
    if (!in_gamma0(g, level)) throw DomainError("matrix is not in Gamma_0(" + std::to_string(level) + ")");
}

RootOfUnity eta_full(const IntegerMatrix2x2& g, JacobiConvention conv)
{
    if (g.det() != 1) throw DomainError("eta multiplier needs a determinant-one matrix");
    const std::int64_t a = g.a, b = g.b, c = g.c, d = g.d;
    constexpr std::int64_t m = 24;
    // (a+d)c - bd(c^2 - 1) common to both branches.
    std::int64_t c2m1 = pmod(mulmod(c, c, m) - 1, m);
    std::int64_t e = pmod(mulmod(a + d, c, m) - mulmod(mulmod(b, d, m), c2m1, m), m);
    int symbol;
    if (pmod(c, 2) == 1) {
        symbol = jacobi_extended_top(d, c, conv);
        e = pmod(e - 3 * pmod(c, m), m);
    } else {
        symbol = jacobi_extended_bottom(c, d, conv);
        e = pmod(e + 3 * pmod(d, m) - 3 - 3 * mulmod(c, d, m), m);
    }
    if (symbol < 0) e = pmod(e + 12, m);
    return RootOfUnity(m, e);
}

RootOfUnity eta_four(const IntegerMatrix2x2& g)
{
    if (g.det() != 1) throw DomainError("eta^4 multiplier needs a determinant-one matrix");
    constexpr std::int64_t m = 6;
    std::int64_t c2m1 = pmod(mulmod(g.c, g.c, m) - 1, m);
    std::int64_t e = mulmod(g.a + g.d, g.c, m) - mulmod(mulmod(g.b, g.d, m), c2m1, m) - 3 * pmod(g.c, m);
    return RootOfUnity(m, pmod(e, m));
}

RootOfUnity level_gamma0(MultiplierFamily family, const IntegerMatrix2x2& g)
{
    const std::int64_t a = g.a, b = g.b, c = g.c, d = g.d;
    switch (family) {
    case MultiplierFamily::Level2:
        require_gamma0(g, 2);
        return RootOfUnity(4, mulmod(d, b - c / 2, 4));
    case MultiplierFamily::Level3:
        require_gamma0(g, 3);
        return RootOfUnity(3, pmod(mulmod(c / 3, a + d, 3) + mulmod(b, d, 3), 3));
    case MultiplierFamily::Level4: {
        require_gamma0(g, 4);
        std::int64_t h = c / 2;
        std::int64_t e = mulmod(mulmod(b, d, 3), 1 - mulmod(h, h, 3), 3) + mulmod(c / 4, a + d, 3);
        return RootOfUnity(3, pmod(e, 3));
    }
    default:
        break;
    }
    throw DomainError("not a level multiplier");
}

} // namespace

std::int64_t IntegerMatrix2x2::det() const
{
    return checked_add(checked_mul(a, d), -checked_mul(b, c));
}

IntegerMatrix2x2 operator*(const IntegerMatrix2x2& x, const IntegerMatrix2x2& y)
{
    return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
            checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
            checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
            checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

IntegerMatrix2x2 inverse(const IntegerMatrix2x2& m)
{
    if (m.det() != 1) throw DomainError("inverse: determinant must be one");
    return {m.d, -m.b, -m.c, m.a};
}

bool in_gamma0(const IntegerMatrix2x2& m, std::int64_t lower, std::int64_t upper)
{
    return m.det() == 1 && m.c % lower == 0 && m.b % upper == 0;
}

RootOfUnity::RootOfUnity(std::int64_t order, std::int64_t exponent) : order_(order), exponent_(pmod(exponent, order))
{
    if (order < 1) throw DomainError("root of unity order must be positive");
}

RootOfUnity RootOfUnity::reduced() const
{
    std::int64_t g = std::gcd(order_, exponent_);
    if (g == 0) return {};
    return RootOfUnity(order_ / g, exponent_ / g);
}

std::complex<double> RootOfUnity::value() const
{
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(exponent_) / static_cast<double>(order_));
}

RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y)
{
    std::int64_t m = std::lcm(x.order_, y.order_);
    return RootOfUnity(m, x.exponent_ * (m / x.order_) + y.exponent_ * (m / y.order_)).reduced();
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const
{
    return RootOfUnity(order_, mulmod(exponent_, k, order_)).reduced();
}

bool operator==(const RootOfUnity& x, const RootOfUnity& y)
{
    RootOfUnity rx = x.reduced(), ry = y.reduced();
    return rx.order_ == ry.order_ && rx.exponent_ == ry.exponent_;
}

std::string to_string(const RootOfUnity& z)
{
    RootOfUnity r = z.reduced();
    return "zeta_" + std::to_string(r.order()) + "^" + std::to_string(r.exponent());
}

int jacobi(std::int64_t a, std::int64_t n)
{
    if (n <= 0 || n % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
    a = pmod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int jacobi_extended_top(std::int64_t d, std::int64_t c, JacobiConvention conv)
{
    if (pmod(c, 2) != 1) throw DomainError("(d/c)^*: c must be odd");
    if (std::gcd(c, d) != 1) throw DomainError("(d/c)^*: arguments must be coprime");
    int s = jacobi(d, c < 0 ? -c : c);
    if (conv.top_sign) s *= sign_factor(c, d);
    return s;
}

int jacobi_extended_bottom(std::int64_t c, std::int64_t d, JacobiConvention conv)
{
    if (pmod(d, 2) != 1) throw DomainError("(c/d)_*: d must be odd");
    if (std::gcd(c, d) != 1) throw DomainError("(c/d)_*: arguments must be coprime");
    int s = jacobi(c, d < 0 ? -d : d);
    if (conv.bottom_sign) s *= sign_factor(c, d);
    return s;
}

std::string to_string(const MultiplierId& id)
{
    std::string sign = id.sign > 0 ? "+" : "-";
    switch (id.family) {
    case MultiplierFamily::EtaFull:
        return "eta";
    case MultiplierFamily::EtaFourPower:
        return id.power == 1 ? "eta4" : "eta4^" + std::to_string(id.power);
    case MultiplierFamily::Level2:
        return "level2" + sign;
    case MultiplierFamily::Level3:
        return "level3" + sign;
    case MultiplierFamily::Level4:
        return "level4" + sign;
    }
    return "?";
}

std::int64_t level_of(const MultiplierId& id)
{
    switch (id.family) {
    case MultiplierFamily::Level2:
        return 2;
    case MultiplierFamily::Level3:
        return 3;
    case MultiplierFamily::Level4:
        return 4;
    default:
        return 1;
    }
}

std::int64_t order_bound(const MultiplierId& id)
{
    switch (id.family) {
    case MultiplierFamily::EtaFull:
        return 24;
    case MultiplierFamily::EtaFourPower:
        return 6;
    case MultiplierFamily::Level2:
        return 4;
    default:
        return id.sign > 0 ? 3 : 6;
    }
}

RootOfUnity evaluate(const MultiplierId& id, const IntegerMatrix2x2& g, JacobiConvention conv)
{
    switch (id.family) {
    case MultiplierFamily::EtaFull:
        return eta_full(g, conv);
    case MultiplierFamily::EtaFourPower:
        return eta_four(g).pow(id.power);
    default:
        break;
    }
    if (id.sign != 1 && id.sign != -1) throw DomainError("multiplier sign must be +1 or -1");
    const std::int64_t level = level_of(id);
    std::int64_t content = std::gcd(std::gcd(g.a, g.b), std::gcd(g.c, g.d));
    if (content == 0) throw DomainError("zero matrix");
    IntegerMatrix2x2 h{g.a / content, g.b / content, g.c / content, g.d / content};
    const std::int64_t det = h.det();
    if (det == 1) return level_gamma0(id.family, h);
    if (det == level) {
        // h = h0 W_N with h0 = h W_N^{-1} = (-b, a/N; -d, c/N).
        if (h.a % level != 0 || h.c % level != 0)
            throw DomainError("matrix is not in the Fricke coset of level " + std::to_string(level));
        IntegerMatrix2x2 h0{-h.b, h.a / level, -h.d, h.c / level};
        RootOfUnity w(2, id.sign > 0 ? 0 : 1);
        return level_gamma0(id.family, h0) * w;
    }
    throw DomainError("matrix is not in the Fricke group of level " + std::to_string(level));
}

std::complex<double> eta_numeric(std::complex<double> z)
{
    using cld = std::complex<long double>;
    const long double pi = std::numbers::pi_v<long double>;
    const cld zz(z.real(), z.imag());
    const cld two_pi_i(0, 2 * pi);
    const cld q = std::exp(two_pi_i * zz);
    cld prod = std::exp(two_pi_i * zz / 24.0L);
    cld qn = q;
    for (int n = 1; n < 100000 && std::abs(qn) > 1e-22L; ++n) {
        prod *= (1.0L - qn);
        qn *= q;
    }
    return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

std::complex<double> balanced_point(const IntegerMatrix2x2& g)
{
    if (g.c == 0) return {0.0, 1.0};
    const double c = static_cast<double>(g.c);
    const double s = g.c > 0 ? 1.0 : -1.0;
    return std::complex<double>(-static_cast<double>(g.d), s) / c;
}

EtaOracleResult numeric_eta_oracle(const IntegerMatrix2x2& g, std::complex<double> z0, double tol, JacobiConvention conv)
{
    if (g.det() != 1) throw DomainError("numeric oracle needs a determinant-one matrix");
    if (z0.imag() <= 0) throw DomainError("sample point must lie in the upper half-plane");
    const std::complex<double> a(static_cast<double>(g.a)), b(static_cast<double>(g.b));
    const std::complex<double> c(static_cast<double>(g.c)), d(static_cast<double>(g.d));
    const std::complex<double> cz_d = c * z0 + d;
    const std::complex<double> gz = (a * z0 + b) / cz_d;
    EtaOracleResult r;
    r.measured = eta_numeric(gz) / (std::sqrt(cz_d) * eta_numeric(z0));
    r.expected = evaluate(MultiplierId{MultiplierFamily::EtaFull}, g, conv).value();
    r.error = std::abs(r.measured - r.expected);
    r.modulus_defect = std::abs(std::abs(r.measured) - 1.0);
    r.pass = r.error <= tol && r.modulus_defect <= tol;
    return r;
}

IntegerMatrix2x2 random_sl2z(std::mt19937_64& rng, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> entry(-bound, bound);
    for (;;) {
        std::int64_t c = entry(rng);
        if (c == 0) {
            std::int64_t s = (rng() & 1U) ? 1 : -1;
            return {s, entry(rng), 0, s};
        }
        std::int64_t d = entry(rng);
        if (std::gcd(c, d) != 1) continue;
        const std::int64_t ac = c < 0 ? -c : c;
        // a d = 1 (mod |c|); shift a by a random multiple of |c| inside the box.
        std::int64_t a = 0;
        for (std::int64_t x = 0; x < ac; ++x)
            if (pmod(x * d, ac) == pmod(1, ac)) {
                a = x;
                break;
            }
        std::vector<std::int64_t> options;
        for (std::int64_t k = -(bound / ac) - 1; k <= bound / ac + 1; ++k) {
            std::int64_t aa = a + k * ac;
            if (aa < -bound || aa > bound) continue;
            std::int64_t num = aa * d - 1;
            if (num % c != 0) continue;
            std::int64_t bb = num / c;
            if (bb < -bound || bb > bound) continue;
            options.push_back(aa);
        }
        if (options.empty()) continue;
        std::int64_t aa = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        return {aa, (aa * d - 1) / c, c, d};
    }
}

Gamma0Sampler::Gamma0Sampler(std::int64_t lower, std::int64_t upper, std::uint64_t seed, std::int64_t entry_bound)
    : lower_(lower), upper_(upper), bound_(entry_bound), rng_(seed)
{
    if (lower < 1 || upper < 1) throw DomainError("Gamma0Sampler: levels must be positive");
}

// Element with lower | c and upper | b from a d = 1 (mod c * upper).
IntegerMatrix2x2 Gamma0Sampler::random_element()
{
    std::uniform_int_distribution<std::int64_t> small(-6, 6);
    std::uniform_int_distribution<std::int64_t> dd(-30, 30);
    for (;;) {
        std::int64_t c = lower_ * small(rng_);
        if (c == 0) {
            std::int64_t s = (rng_() & 1U) ? 1 : -1;
            return {s, upper_ * small(rng_), 0, s};
        }
        std::int64_t modulus = (c < 0 ? -c : c) * upper_;
        std::int64_t d = dd(rng_);
        if (std::gcd(d, modulus) != 1) continue;
        std::int64_t a = 0;
        for (std::int64_t x = 0; x < modulus; ++x)
            if (pmod(x * d, modulus) == pmod(1, modulus)) {
                a = x;
                break;
            }
        a += modulus * small(rng_);
        std::int64_t b = (a * d - 1) / c;
        IntegerMatrix2x2 g{a, b, c, d};
        if (!in_gamma0(g, lower_, upper_)) throw ConstructionError("Gamma0Sampler produced a non-member");
        return g;
    }
}

IntegerMatrix2x2 Gamma0Sampler::operator()()
{
    const IntegerMatrix2x2 tn{1, upper_, 0, 1};
    const IntegerMatrix2x2 lm{1, 0, lower_, 1};
    const IntegerMatrix2x2 minus_one{-1, 0, 0, -1};
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<int> pick(0, 6);
    for (;;) {
        IntegerMatrix2x2 w{};
        bool ok = true;
        int n = len(rng_);
        try {
            for (int i = 0; i < n; ++i) {
                IntegerMatrix2x2 x;
                switch (pick(rng_)) {
                case 0: x = tn; break;
                case 1: x = inverse(tn); break;
                case 2: x = lm; break;
                case 3: x = inverse(lm); break;
                case 4: x = minus_one; break;
                default: x = random_element(); break;
                }
                w = w * x;
                if (std::abs(w.a) > bound_ || std::abs(w.b) > bound_ || std::abs(w.c) > bound_ ||
                    std::abs(w.d) > bound_) {
                    ok = false;
                    break;
                }
            }
        } catch (const DomainError&) {
            ok = false;
        }
        if (!ok) continue;
        if (!in_gamma0(w, lower_, upper_)) throw ConstructionError("Gamma0Sampler word left the group");
        return w;
    }
}

int calibrate_eta_convention(int samples, std::uint64_t seed, double tol, JacobiConvention& chosen)
{
    std::mt19937_64 rng(seed);
    std::vector<IntegerMatrix2x2> corpus{kS, kT, {-1, 0, 0, -1}, {0, 1, -1, 0}, {-1, -1, 0, -1}};
    for (int i = 0; i < samples; ++i) corpus.push_back(random_sl2z(rng, 50));
    int passing = 0;
    for (int bits = 0; bits < 4; ++bits) {
        JacobiConvention conv{(bits & 1) != 0, (bits & 2) != 0};
        bool all = true;
        for (const auto& g : corpus) {
            if (!numeric_eta_oracle(g, balanced_point(g), tol, conv).pass) {
                all = false;
                break;
            }
        }
        if (all) {
            ++passing;
            chosen = conv;
        }
    }
    return passing;
}

} // namespace heckegrid
