#pragma once

#include "heckegrid/qseries.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heckegrid {

// Every generator takes `prec` as an exclusive bound on the exponent of q: all
// coefficients of q^e with e < prec are exact. The returned series sits at the
// coarsest tick t that represents it, with knowledge bound prec * t.

enum class GeneratorName {
    Eta,
    Eisenstein,
    Delta,
    J,
    J2,
    J3,
    J4,
    H2small,
    H3small,
    H4small,
    F2plus,
    F2minus,
    F3plus,
    F3minus,
    F4plus,
    F4minus,
    G2plus,
    G2minus,
    G3minus,
    G4minus,
    H3cap,
    H4cap,
};

struct GeneratorId {
    GeneratorName name;
    int weight = 0;  ///< only for Eisenstein: k in {2,4,6,8,10,14}
    long scale = 1;  ///< evaluate at z -> scale * z

    friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

/// Lowercase CLI spelling: "eta", "e4", "delta", "j", "j2", "h2", "f4plus", "h3cap", ...
std::string generator_name(const GeneratorId& id);

/// Inverse of generator_name; an optional "@a" suffix sets the scale ("e4@2" is E_4(2z)).
GeneratorId parse_generator(std::string_view text);

/// Exact Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(unsigned n);

/// Coefficients of prod_{n>=1} (1 - q^n)^r below q^terms, any integer r.
std::vector<Integer> euler_product_power(long r, long terms);

/// eta(z) = q^{1/24} prod (1 - q^n), tick 24.
FracSeries eta(long prec);

/// prod_i eta(scale_i z)^{exponent_i}.
FracSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, long prec);

/// E_k(z) = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n for k in {2,4,6,8,10,14}, tick 1.
FracSeries eisenstein(int k, long prec);

FracSeries named_form(const GeneratorId& id, long prec);

} // namespace heckegrid
