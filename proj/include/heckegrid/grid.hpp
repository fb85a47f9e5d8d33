#pragma once

#include "heckegrid/qseries.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heckegrid {

/// The two ladders of a family. Side A starts from the pole seed f_s (level one) or
/// f_1 (levels 2-4); side B holds the opposite residue class.
enum class Side { A, B };

struct GridParams {
    int level = 1;  ///< N in {1, 2, 3, 4}
    int k = 0;      ///< level one only
    int r = 0;      ///< level one only
    int sign = 0;   ///< levels 2-4 only: +1 or -1

    long t = 1;       ///< exponent denominator
    long s = 1;       ///< s/t = r/24 at level one; 1 otherwise
    long ell = 0;     ///< level one only
    long weight = 2;  ///< k - r/2 at level one, 2 otherwise

    friend bool operator==(const GridParams&, const GridParams&) = default;
};

/// Validates the inputs and fills the derived fields.
GridParams derive_params(int level, int k, int r, int sign);

std::string describe(const GridParams& p);

/// Index of the side-A seed: s at level one, 1 otherwise.
long seed_index(const GridParams& p);

/// Index of the side-B seed: t*ell - s at level one (f_{-s} when ell = 0), 3 at level 2
/// plus, 2 at levels 3-4 plus, -1 (the cusp form h_N) on the minus sides.
long side_b_seed_index(const GridParams& p);

/// Side of a ladder index, or nullopt if d belongs to neither ladder.
std::optional<Side> side_of(const GridParams& p, long d);

/// Smallest numerator a nonleading coefficient of a side's forms may occupy.
long gap_bound(const GridParams& p, Side side);

/// Residue modulo t of the numerators carried by forms on this side.
long support_residue(const GridParams& p, Side side);

/// Hauptmodul of the level at tick t, known below numerator `prec`.
FracSeries hauptmodul(const GridParams& p, long prec);

struct GridFamily {
    GridParams params;
    std::map<long, FracSeries> forms;
    std::map<long, std::string> seeds;  ///< seed index -> defining expression
    std::map<long, Integer> lcd;        ///< least common denominator of each form

    const FracSeries& form(long d) const;
    bool has(long d) const { return forms.contains(d); }
};

/// Seed members of both ladders, each known below `prec` (numerators at tick t).
std::map<long, FracSeries> seed_forms(const GridParams& p, long prec);

/// Builds every rung d <= d_max on both sides, each reported to at least `prec_out`.
/// Seeds already present keep their precision if it is larger.
GridFamily extend_ladder(const GridFamily& family, long d_max, long prec_out);

/// Seeds at max(seed_prec, prec_out), then the ladders up to d_max at prec_out.
GridFamily build_family(const GridParams& p, long d_max, long prec_out, long seed_prec = 0);

/// Empty vector when f satisfies every family invariant for index d; otherwise a list
/// of the violations.
std::vector<std::string> check_invariants(const GridParams& p, long d, const FracSeries& f);

} // namespace heckegrid
