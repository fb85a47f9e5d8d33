#pragma once

#include "heckegrid/grid.hpp"

#include <optional>
#include <vector>

namespace heckegrid {

struct HeckeSpec {
    long t = 1;       ///< tick of the series the operator acts on
    long weight = 2;  ///< w in the p^{w-1} term
    long p = 5;
    long n = 1;
    int level = 1;    ///< N of the Fricke group; p must not divide it
};

/// Spec for a family's ladder weight and tick.
HeckeSpec hecke_spec(const GridParams& params, long p, long n);

/// Throws DomainError unless p is an odd prime with p not dividing N, p^2 = 1 mod 2t and n >= 1.
void check_admissible(const HeckeSpec& spec);
bool is_admissible(const HeckeSpec& spec);

/// b(m) = a(pm) + p^{w-1} a(m/p), known below ceil(f.prec / p). Uses spec.p only.
FracSeries t_operator(const FracSeries& f, const HeckeSpec& spec);

/// T(p^n) through T(p^{j+1}) = T(p^j) T(p) - p^{w-1} T(p^{j-1}).
FracSeries t_power_operator(const FracSeries& f, const HeckeSpec& spec);

/// n-fold U(p).
FracSeries u_power(const FracSeries& f, long p, long n);

/// U(p^n) = T(p^n) - sum_{j=1..n} p^{j(w-1)} U(p^{n-j}) V(p^j), with the U(p^{n-j}) terms
/// themselves obtained recursively from T.
FracSeries u_power_via_t(const FracSeries& f, const HeckeSpec& spec);

/// Exclusive numerator bound that leaves `positions` free coefficients of f_d visible.
long identity_window(const GridParams& params, long d, long positions = 10);

/// Family built deep and precise enough for check_grid_identity(p, n).
GridFamily family_for_identity(const GridParams& params, long p, long n, long positions = 25);

/// Right-hand side of the grid identity for f_seed | T(p^n):
/// eigenvalue * f_target + correction_coefficient * f_{correction_index}.
struct IdentityShape {
    long seed = 0;
    long target = 0;
    Integer eigenvalue;
    std::optional<long> correction_index;
    Rational correction_coefficient;
};

/// Reads the correction coefficient a_seed(p^n) from the family's seed.
IdentityShape identity_shape(const GridFamily& family, long p, long n);

FracSeries identity_rhs(const GridFamily& family, const IdentityShape& shape);

struct IdentityVerdict {
    GridParams params;
    long p = 0;
    long n = 0;
    long seed = 0;                          ///< index of the form T(p^n) is applied to
    long target = 0;                        ///< p^n * seed
    Integer eigenvalue;                     ///< p^{(w-1)n}
    std::optional<long> correction_index;   ///< f_{-s} or h_N when the identity carries a correction
    Rational correction_coefficient;        ///< a_seed(p^n)
    long window = 0;                        ///< comparison covers numerators below this bound
    long compared_positions = 0;            ///< free coefficients of f_target inside the window
    std::optional<long> first_discrepancy;  ///< numerator of the first mismatch
    FracSeries lhs{1, 0};
    FracSeries rhs{1, 0};
    bool pass = false;
};

/// Applies T(p^n) to the side-A seed and compares with the asserted combination of ladder
/// members. Throws PrecisionError when fewer than `min_positions` free coefficients of the
/// target survive, or when a needed rung is missing.
IdentityVerdict check_grid_identity(const GridFamily& family, long p, long n, long min_positions = 10);

} // namespace heckegrid
