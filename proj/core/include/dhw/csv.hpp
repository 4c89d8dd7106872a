#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace dhw {

// Minimal CSV support for the simple comma-separated tables this project
// reads and writes (no quoting or embedded commas needed).

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void write_row(const std::vector<std::string>& cells);
    void flush() { out_.flush(); }

    // Uniform numeric formatting keeps outputs byte-stable across runs.
    static std::string num(double v);
    static std::string num(std::int64_t v);

private:
    std::ofstream out_;
    size_t n_cols_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

// Throws std::runtime_error naming the file (and row, where applicable).
CsvTable read_csv(const std::string& path);

}  // namespace dhw
