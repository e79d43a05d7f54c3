#include "trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace bandedge::tools {

std::string format_value(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double canonical_zero(double v) { return v == 0.0 ? 0.0 : v; }

std::string render_csv(const TraceTable& table) {
    std::string out;
    out.reserve(64 + table.rows.size() * (table.columns.size() * 20 + 8));
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_value(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoFailure("cannot create directory " + parent.string() + ": " + ec.message());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoFailure("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw IoFailure("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoFailure("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump() + "\n"; }

}  // namespace bandedge::tools
