#include "twoatom/experiments/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace twoatom::experiments {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw std::logic_error("CsvTable: row has " + std::to_string(row.size()) + " fields, header has " +
                               std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

namespace {

void append_field(std::string& out, const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) {
        out += f;
        return;
    }
    out += '"';
    for (char c : f) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
}

void append_line(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out += ',';
        }
        append_field(out, fields[i]);
    }
    out += '\n';
}

}  // namespace

std::string CsvTable::body() const {
    std::string out;
    append_line(out, header);
    for (const auto& r : rows) {
        append_line(out, r);
    }
    return out;
}

std::string CsvTable::to_string() const { return std::string("# tool_version=") + kToolVersion + "\n" + body(); }

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    f << to_string();
    if (!f) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::vector<std::string> config_columns() {
    return {"env", "x", "y", "d_over_l", "coupling", "pol", "r1x", "r1y", "r1z", "r2x", "r2y", "r2z", "p",
            "si_convention"};
}

std::vector<std::string> config_values(const SystemConfig& c, const std::string& pol_label) {
    const auto& r1 = c.orientation_1.components();
    const auto& r2 = c.orientation_2.components();
    return {to_string(c.environment),
            format_double(c.separation_x),
            format_double(c.plate_distance_y),
            format_double(c.d_over_l()),
            format_double(c.coupling_ratio),
            pol_label,
            format_double(r1[0]),
            format_double(r1[1]),
            format_double(r1[2]),
            format_double(r2[0]),
            format_double(r2[1]),
            format_double(r2[2]),
            format_double(c.entanglement_p),
            special::to_string(c.si_convention)};
}

}  // namespace twoatom::experiments
