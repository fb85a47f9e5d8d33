#include "heckegrid/arith.hpp"

#include "heckegrid/error.hpp"

#include <cctype>

namespace heckegrid {

bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Integer ipow(long p, unsigned long e)
{
    Integer r;
    Integer base = p;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

long lpow(long p, unsigned e)
{
    long r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, p, &r)) throw DomainError("integer power overflows 64 bits");
    }
    return r;
}

long valuation(const Integer& x, long p)
{
    if (x == 0) throw DomainError("valuation of zero");
    Integer y = x;
    long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long valuation(const Rational& x, long p)
{
    return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
        throw DomainError("malformed rational: '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    Integer d{std::string(den)};
    if (d == 0) throw DivisionByZeroError("rational with zero denominator: '" + std::string(text) + "'");
    Rational r(Integer(n), d);
    r.canonicalize();
    return r;
}

} // namespace heckegrid
