#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace heckegrid {

using Rational = mpq_class;
using Integer = mpz_class;

/// floor(a / b) for b > 0.
constexpr long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// ceil(a / b) for b > 0.
constexpr long ceil_div(long a, long b)
{
    return -floor_div(-a, b);
}

/// Non-negative residue of a modulo m (m > 0).
constexpr long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

bool is_prime(long n);

/// p^e as a big integer.
Integer ipow(long p, unsigned long e);

/// p^e as a long; throws DomainError on overflow.
long lpow(long p, unsigned e);

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& x, long p);

/// p-adic valuation of a nonzero rational (may be negative).
long valuation(const Rational& x, long p);

/// "p" or "p/q" in lowest terms, sign on the numerator.
std::string to_string(const Rational& x);

/// Inverse of to_string; accepts a non-canonical input and canonicalizes it.
Rational parse_rational(std::string_view text);

/// Least common multiple of all denominators seen so far.
class DenominatorLcm {
public:
    void add(const Rational& x) { mpz_lcm(lcm_.get_mpz_t(), lcm_.get_mpz_t(), x.get_den_mpz_t()); }
    const Integer& value() const { return lcm_; }

private:
    Integer lcm_ = 1;
};

} // namespace heckegrid
