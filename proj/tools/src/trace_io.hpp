#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bandedge/errors.hpp"

#include "json.hpp"

namespace bandedge::tools {

// Output-path problems are configuration errors (exit 2), distinct from
// numerical failures.
struct IoFailure : Error {
    explicit IoFailure(const std::string& message) : Error("io", message) {}
};

struct TraceTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Fixed 17-significant-digit decimal rendering, independent of locale
// (main() pins LC_ALL=C). Zero is canonicalized so -0.0 and 0.0 emit the
// same byte sequence; everything else round-trips exactly.
std::string format_value(double v);

// Strips the sign off -0.0 so JSON output is byte-stable too.
double canonical_zero(double v);

// Header line plus one line per row, comma separated, '\n' endings.
std::string render_csv(const TraceTable& table);

// Atomic replace: content goes to a sibling temp file, then rename.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// Compact one-line JSON plus trailing newline.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace bandedge::tools
