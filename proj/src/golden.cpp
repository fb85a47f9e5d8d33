#include "heckegrid/golden.hpp"

#include "heckegrid/error.hpp"
#include "heckegrid/generators.hpp"
#include "heckegrid/grid.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace heckegrid {

namespace {

struct GridBlock {
    GridParams params;
    std::vector<std::tuple<long, long, Rational>> values;  // d, n, value
};

struct GeneratorBlock {
    long tick = 1;
    std::vector<std::pair<long, Rational>> values;
};

std::string where(const GoldenFile& file, long line)
{
    return file.name + ":" + std::to_string(line);
}

void check_grid(const GridBlock& b, GoldenReport& report, const std::string& label)
{
    long dmax = 0;
    long prec = 1;
    for (const auto& [d, n, v] : b.values) {
        dmax = std::max(dmax, d);
        prec = std::max(prec, n + 1);
    }
    GridFamily fam = build_family(b.params, dmax, prec);
    for (const auto& [d, n, v] : b.values) {
        ++report.checked;
        Rational got = fam.form(d).coeff(n);
        if (got != v)
            report.failures.push_back(label + ": " + describe(b.params) + ", f_" + std::to_string(d) + " at numerator " +
                                      std::to_string(n) + ": expected " + to_string(v) + ", got " + to_string(got));
    }
}

void check_generator(const std::string& name, const GeneratorBlock& b, GoldenReport& report, const std::string& label)
{
    long top = 0;
    for (const auto& [n, v] : b.values) top = std::max(top, n);
    FracSeries f = named_form(parse_generator(name), top / b.tick + 2);
    if (f.tick() != b.tick) {
        report.failures.push_back(label + ": " + name + " has tick " + std::to_string(f.tick()) + ", table says " +
                                  std::to_string(b.tick));
        report.checked += static_cast<long>(b.values.size());
        return;
    }
    for (const auto& [n, v] : b.values) {
        ++report.checked;
        Rational got = f.coeff(n);
        if (got != v)
            report.failures.push_back(label + ": " + name + " at numerator " + std::to_string(n) + ": expected " +
                                      to_string(v) + ", got " + to_string(got));
    }
}

} // namespace

GoldenReport check_golden(const GoldenFile& file)
{
    std::vector<GridBlock> grids;
    std::map<std::string, GeneratorBlock> gens;
    std::vector<std::string> gen_order;

    std::istringstream in(file.text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head.front() == '#') continue;
        if (head == "grid") {
            int level = 0, k = 0, r = 0, sign = 0;
            if (!(ls >> level >> k >> r >> sign)) throw DomainError(where(file, lineno) + ": malformed grid header");
            grids.push_back({derive_params(level, k, r, sign), {}});
            continue;
        }
        std::string a, b, c;
        if (!(ls >> a >> b)) throw DomainError(where(file, lineno) + ": too few columns");
        bool has_fourth = static_cast<bool>(ls >> c);
        try {
            if (!has_fourth) {
                if (grids.empty()) throw DomainError(where(file, lineno) + ": value before any grid header");
                grids.back().values.emplace_back(std::stol(head), std::stol(a), parse_rational(b));
            } else {
                auto [it, inserted] = gens.try_emplace(head);
                if (inserted) gen_order.push_back(head);
                it->second.tick = std::stol(a);
                it->second.values.emplace_back(std::stol(b), parse_rational(c));
            }
        } catch (const std::logic_error&) {
            throw DomainError(where(file, lineno) + ": malformed number");
        }
    }

    GoldenReport report;
    for (const auto& g : grids) check_grid(g, report, file.name);
    for (const auto& name : gen_order) check_generator(name, gens.at(name), report, file.name);
    return report;
}

GoldenReport check_golden(const std::vector<GoldenFile>& files)
{
    GoldenReport total;
    for (const auto& f : files) {
        GoldenReport r = check_golden(f);
        total.checked += r.checked;
        total.failures.insert(total.failures.end(), r.failures.begin(), r.failures.end());
    }
    return total;
}

} // namespace heckegrid
