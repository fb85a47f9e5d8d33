#pragma once

#include "heckegrid/qseries.hpp"

#include <random>

namespace testing_support {

using heckegrid::FracSeries;
using heckegrid::Rational;

// Random series at `tick` with leading numerator `lead` (coefficient nonzero) and
// roughly `terms` further numerators below lead + terms. Coefficients are small
// integers, or small fractions when `fractions` is set.
inline FracSeries random_series(std::mt19937_64& rng, long tick, long lead, long terms, bool fractions = false,
                                long step = 1)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    FracSeries::Coeffs c;
    long first = num(rng);
    c[lead] = first == 0 ? 1 : first;
    for (long n = lead + step; n < lead + terms * step; n += step) {
        Rational x(num(rng), fractions ? den(rng) : 1);
        x.canonicalize();
        if (x != 0) c[n] = x;
    }
    return FracSeries(tick, lead + terms * step, std::move(c));
}

} // namespace testing_support
