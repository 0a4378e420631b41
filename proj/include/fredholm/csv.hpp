#pragma once

/// CSV writers for the fixed export formats (header row, comma separators,
/// '.' decimal point, LF line endings, full double precision) and a small
/// two-column reader for tabulated inputs and fixtures.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fredholm {

/// Shortest representation that round-trips a double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

inline void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                           const std::vector<std::vector<double>>& rows) {
    auto out = open_csv(path);
    write_csv(out, header, rows);
}

/// Read a headered two-column numeric CSV (e.g. `t,value`).
inline std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
    std::vector<double> col0, col1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw std::runtime_error(path + ": malformed row at line " + std::to_string(line_no));
        try {
            col0.push_back(std::stod(a));
            col1.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": non-numeric value at line " +
                                     std::to_string(line_no));
        }
    }
    return {std::move(col0), std::move(col1)};
}

} // namespace fredholm
