#pragma once

#include "heckegrid/grid.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heckegrid {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct ValuationProfile {
    std::map<long, long> valuations;  ///< numerator -> v_p of the nonzero coefficient there
    std::optional<long> min;          ///< nullopt for the zero series
    long prec = 0;
};

/// v_p of every known nonzero coefficient. Throws IntegralityError when p divides a
/// denominator and PrecisionError when nothing at all is known.
ValuationProfile valuation_profile(const FracSeries& f, long p);

struct CongruenceReport {
    long p = 0;
    long n = 0;
    long target = 0;  ///< claimed power of p
    ValuationProfile profile;
    long nonzero = 0;  ///< nonzero coefficients in the window
    Verdict verdict = Verdict::Inconclusive;
    std::string statement;  ///< human-readable form of what was checked
    std::string note;       ///< interpretation remarks, empty when none
};

/// Exponent e with F_1 | U(p^n) = 0 mod p^e claimed for this family. Throws DomainError
/// when no claim is made (level one, ell = 0, p = -1 mod t, weight > 2).
long congruence_target(const GridParams& params, long p, long n);

/// Judges an already computed U(p^n) image against `target`. A zero `source` passes
/// trivially; fewer than `min_nonzero` nonzero coefficients is Inconclusive.
CongruenceReport judge(const FracSeries& image, bool source_is_zero, long p, long n, long target,
                       long min_nonzero = 10);

/// F_1(z) = f_seed(tz) at integer exponents.
FracSeries integral_seed(const GridFamily& family);

/// Seed precision that leaves `terms` coefficients of F_1 | U(p^n) in its residue class visible.
long congruence_seed_prec(const GridParams& params, long p, long n, long terms = 40);

/// Family holding only seeds, precise enough for congruence checks up to p^n_max.
GridFamily family_for_congruence(const GridParams& params, long p, long n_max, long terms = 40);

CongruenceReport check_family_congruence(const GridFamily& family, long p, long n, long min_nonzero = 10);

/// Least A >= 0 with min v_p(F_1 | U(p^n)) >= target(n) - A for 1 <= n <= n_max.
long estimate_Ap(const GridFamily& family, long p, long n_max);

/// F_1 | U(p^n) assembled from ladder members: U(p^m) F_1 equals the rescaled right-hand
/// side of the grid identity for p^m minus sum_j p^{j(w-1)} V(p^j) U(p^{m-j}) F_1.
/// No Hecke operator is applied to a series.
FracSeries u_power_from_identities(const GridFamily& family, long p, long n);

/// Family with the rungs u_power_from_identities needs for a `terms`-coefficient window.
GridFamily family_for_identity_route(const GridParams& params, long p, long n, long terms = 40);

/// f = sum_i c_i b_i over the basis {F_N^+, F_N^-} (N = 3) or {F_4^+, F_4^-, E_4(2z)} (N = 4).
struct Level34Form {
    int level = 3;
    std::vector<Rational> coefficients;
};

/// (f(3z) / H_N(z)) | U(p^n) against exponent n (p = 1 mod 3) or floor(n/2) (p = 2 mod 3).
CongruenceReport check_level34_statement(const Level34Form& f, long p, long n, long terms = 40,
                                         long min_nonzero = 10);

} // namespace heckegrid
