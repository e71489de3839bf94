#include "treepara/csv.hpp"

#include "treepara/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>

namespace treepara {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string::npos ? pos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (!have_header) {
            table.header = split(line);
            have_header = true;
        } else {
            table.rows.push_back(split(line));
        }
    }
    if (!have_header) throw Error(ErrorCode::SchemaError, "CSV input is empty");
    return table;
}

double parse_real(const std::string& field, const std::string& what) {
    // strtod rather than from_chars<double>: the latter is missing on older libstdc++.
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::SchemaError, "bad " + what + " value '" + field + "'");
    }
    return v;
}

std::size_t parse_index(const std::string& field, const std::string& what) {
    std::size_t v = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::SchemaError, "bad " + what + " '" + field + "'");
    }
    return v;
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace treepara
