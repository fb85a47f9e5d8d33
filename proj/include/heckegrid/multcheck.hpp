#pragma once

#include "heckegrid/multiplier.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace heckegrid {

struct MultcheckLine {
    std::string check;
    long samples = 0;
    long failures = 0;
    std::string first_failure;  ///< empty when nothing failed
};

struct MultcheckSummary {
    int conventions_passing = 0;  ///< sign conventions accepted by the numeric eta oracle
    JacobiConvention chosen;
    std::vector<MultcheckLine> lines;

    bool pass() const;
};

/// Runs the multiplier checks: convention calibration, the numeric eta oracle, the character
/// property on random pairs (the eta multiplier up to its weight-1/2 cocycle), triviality on
/// the conjugated congruence subgroups, agreement with products of eta multipliers, the
/// Fricke values and the order bounds.
MultcheckSummary run_multiplier_suite(int samples, std::uint64_t seed, double tol = 1e-9);

} // namespace heckegrid
