#include <cmath>
#include <cstdio>
#include <ostream>

#include "ringcav/scan.hpp"

namespace ringcav {

namespace {

// Fixed "%.17g" formatting keeps output byte-identical across runs and
// round-trips doubles exactly.
std::string format_value(Scalar v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string escape_json(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& os) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << ",error\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) os << ',';
            os << format_value(table.rows[r][c]);
        }
        os << ',' << table.row_errors[r] << '\n';
    }
}

void write_json(const ResultTable& table, std::ostream& os) {
    os << "{\n  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ", ";
        os << '"' << escape_json(table.columns[c]) << '"';
    }
    os << ", \"error\"],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << "    [";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) os << ", ";
            const std::string v = format_value(table.rows[r][c]);
            os << (v.empty() ? "null" : v);
        }
        os << ", \"" << escape_json(table.row_errors[r]) << "\"]";
        os << (r + 1 < table.rows.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

}  // namespace ringcav
