// csv.hpp - CSV tables with shortest round-trip number formatting.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "twoatom/kernels.hpp"

namespace twoatom::experiments {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
// for non-finite values.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    // "# tool_version=..." line, header, rows; LF endings, fields quoted only
    // when they contain a comma, quote or newline.
    std::string to_string() const;
    // Same without the version line; byte-identical for identical inputs.
    std::string body() const;
    void write(const std::filesystem::path& path) const;
};

// Columns that make every row self-describing.
std::vector<std::string> config_columns();
std::vector<std::string> config_values(const SystemConfig& config, const std::string& pol_label);

}  // namespace twoatom::experiments
