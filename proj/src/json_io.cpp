#include "heckegrid/json_io.hpp"

#include "heckegrid/error.hpp"

#include <charconv>
#include <string>

namespace heckegrid {

Json series_to_json(const FracSeries& f)
{
    Json coeffs = Json::object();
    for (const auto& [n, c] : f.coeffs()) coeffs[std::to_string(n)] = to_string(c);
    Json j;
    j["t"] = f.tick();
    j["prec"] = f.prec();
    j["coeffs"] = std::move(coeffs);
    return j;
}

namespace {

long parse_index(const std::string& key, const char* what)
{
    long n = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
    if (ec != std::errc() || ptr != key.data() + key.size())
        throw DomainError(std::string(what) + ": bad integer key '" + key + "'");
    return n;
}

} // namespace

FracSeries series_from_json(const Json& j)
{
    try {
        if (!j.is_object() || !j.contains("t") || !j.contains("prec") || !j.contains("coeffs"))
            throw DomainError("series JSON needs fields t, prec and coeffs");
        long tick = j.at("t").get<long>();
        long prec = j.at("prec").get<long>();
        FracSeries::Coeffs coeffs;
        for (const auto& [key, value] : j.at("coeffs").items()) {
            coeffs[parse_index(key, "series JSON")] = parse_rational(value.get<std::string>());
        }
        return FracSeries(tick, prec, std::move(coeffs));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("series JSON: ") + e.what());
    }
}

Json params_to_json(const GridParams& p)
{
    Json j;
    j["level"] = p.level;
    j["k"] = p.k;
    j["r"] = p.r;
    j["sign"] = p.sign;
    j["t"] = p.t;
    j["s"] = p.s;
    j["ell"] = p.ell;
    j["weight"] = p.weight;
    return j;
}

GridParams params_from_json(const Json& j)
{
    try {
        GridParams p = derive_params(j.at("level").get<int>(), j.value("k", 0), j.value("r", 0), j.value("sign", 0));
        const Json derived = params_to_json(p);
        for (const auto& [key, value] : derived.items())
            if (j.contains(key) && j.at(key) != value)
                throw DomainError("family JSON: stored " + key + " = " + j.at(key).dump() + " but the inputs give " +
                                  value.dump());
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("family JSON: ") + e.what());
    }
}

Json family_to_json(const GridFamily& family)
{
    Json seeds = Json::object();
    for (const auto& [d, expr] : family.seeds) seeds[std::to_string(d)] = expr;
    Json forms = Json::object();
    for (const auto& [d, f] : family.forms) forms[std::to_string(d)] = series_to_json(f);
    Json j;
    j["params"] = params_to_json(family.params);
    j["seeds"] = std::move(seeds);
    j["forms"] = std::move(forms);
    return j;
}

GridFamily family_from_json(const Json& j)
{
    try {
        if (!j.is_object() || !j.contains("params") || !j.contains("forms"))
            throw DomainError("family JSON needs fields params and forms");
        GridFamily fam;
        fam.params = params_from_json(j.at("params"));
        if (j.contains("seeds"))
            for (const auto& [key, value] : j.at("seeds").items())
                fam.seeds[parse_index(key, "family JSON")] = value.get<std::string>();
        for (const auto& [key, value] : j.at("forms").items()) {
            long d = parse_index(key, "family JSON");
            FracSeries f = series_from_json(value);
            auto bad = check_invariants(fam.params, d, f);
            if (!bad.empty()) throw DomainError("family JSON: f_" + key + ": " + bad.front());
            fam.lcd[d] = f.denominator_lcm();
            fam.forms.emplace(d, std::move(f));
        }
        return fam;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("family JSON: ") + e.what());
    }
}

} // namespace heckegrid
