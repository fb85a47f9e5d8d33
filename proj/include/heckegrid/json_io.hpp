#pragma once

#include "heckegrid/grid.hpp"
#include "heckegrid/qseries.hpp"

#include <json.hpp>

namespace heckegrid {

using Json = nlohmann::ordered_json;

/// {"t": tick, "prec": prec, "coeffs": {"<numerator>": "<p or p/q>", ...}} with numerators
/// in increasing numeric order.
Json series_to_json(const FracSeries& f);

/// Accepts keys in any order; throws DomainError on a malformed document.
FracSeries series_from_json(const Json& j);

Json params_to_json(const GridParams& p);

/// Re-derives the parameters from level, k, r and sign and rejects documents whose
/// derived fields disagree.
GridParams params_from_json(const Json& j);

/// {"params": {...}, "seeds": {"d": expression}, "forms": {"d": series}} with indices in
/// increasing numeric order.
Json family_to_json(const GridFamily& family);

/// Every form is checked against the family invariants; DomainError on any violation.
GridFamily family_from_json(const Json& j);

} // namespace heckegrid
