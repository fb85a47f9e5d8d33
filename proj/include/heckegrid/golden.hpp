#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heckegrid {

struct GoldenFile {
    std::string name;
    std::string text;
};

/// The reference coefficient tables compiled into the library.
const std::vector<GoldenFile>& golden_corpus();

struct GoldenReport {
    long checked = 0;
    std::vector<std::string> failures;  ///< one line per mismatching value

    bool pass() const { return failures.empty() && checked > 0; }
};

/// Checks every value of one table. Two layouts are understood:
///   "grid <level> <k> <r> <sign>" followed by "<d> <n> <value>" lines, and
///   "<generator> <tick> <n> <value>" lines.
/// Blank lines and lines starting with '#' are ignored. Throws DomainError on a
/// malformed table.
GoldenReport check_golden(const GoldenFile& file);

GoldenReport check_golden(const std::vector<GoldenFile>& files);

} // namespace heckegrid
