#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moeaad/core.hpp"

namespace moeaad {

// shortest round-trippable decimal form, stable across runs
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary: no platform newline surprises
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

// Numeric CSV reader; a single leading non-numeric row is treated as a header.
inline std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_numeric_csv: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        std::vector<double> row;
        row.reserve(cells.size());
        bool ok = true;
        for (const std::string& c : cells) {
            double v;
            if (!parse_double(c, v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (rows.empty() && lineno == 1) continue;  // header row
            throw std::runtime_error("read_numeric_csv: non-numeric cell at " + path + ":" +
                                     std::to_string(lineno));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// CSV with a mandatory header row and string cells (mixed-type tables).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        throw std::runtime_error("CsvTable: missing column " + name);
    }
};

inline CsvTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv_table: cannot open " + path);
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw std::runtime_error("read_csv_table: empty file " + path);
    return t;
}

inline void write_population_csv(const std::string& path, const std::vector<Solution>& pop) {
    if (pop.empty()) throw std::runtime_error("write_population_csv: empty population");
    const std::size_t n = pop[0].x.size(), m = pop[0].f.size();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < n; ++i) header.push_back("x" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) header.push_back("f" + std::to_string(j));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(pop.size());
    for (const Solution& s : pop) {
        std::vector<std::string> row;
        row.reserve(n + m);
        for (double v : s.x) row.push_back(fmt_g17(v));
        for (double v : s.f) row.push_back(fmt_g17(v));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

}  // namespace moeaad
