#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace treepara {

/// Plain comma-separated table: first non-empty line is the header, fields
/// are trimmed, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);

double parse_real(const std::string& field, const std::string& what);
std::size_t parse_index(const std::string& field, const std::string& what);

/// 17 significant digits, round-trip exact.
std::string format_real(double value);

}  // namespace treepara
