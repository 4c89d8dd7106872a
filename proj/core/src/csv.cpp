#include "dhw/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dhw {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), n_cols_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_)
        throw std::runtime_error("csv row width mismatch: expected " + std::to_string(n_cols_) +
                                 ", got " + std::to_string(cells.size()));
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

std::string CsvWriter::num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string CsvWriter::num(std::int64_t v) { return std::to_string(v); }

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    CsvTable t;
    std::string line;
    size_t row_no = 0;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (row_no == 1) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size())
                throw std::runtime_error(path + ": row " + std::to_string(row_no) + " has " +
                                         std::to_string(cells.size()) + " cells, expected " +
                                         std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw std::runtime_error(path + ": empty file");
    return t;
}

}  // namespace dhw
