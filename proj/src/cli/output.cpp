#include "cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#ifndef WQED_VERSION
#define WQED_VERSION "0.0.0"
#endif

namespace wqed::cli {

const char* version() { return WQED_VERSION; }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Table::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const Result& r) {
    os << "# wqed " << version() << "\n";
    os << "# experiment = " << r.experiment << "\n";
    for (const auto& [k, v] : r.parameters) os << "# " << k << " = " << v << "\n";
    for (const auto& [k, v] : r.notes) os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < r.table.columns.size(); ++c)
        os << (c ? "," : "") << r.table.columns[c];
    os << "\n";
    for (const auto& row : r.table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << "\n";
    }
}

void write_json(std::ostream& os, const Result& r) {
    nlohmann::ordered_json j;
    j["wqed_version"] = version();
    j["experiment"] = r.experiment;
    j["parameters"] = r.parameters;
    for (const auto& [k, v] : r.notes) j["notes"][k] = v;
    if (!r.extra.is_null()) {
        for (const auto& [k, v] : r.extra.items()) j[k] = v;
    } else {
        j["columns"] = r.table.columns;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : r.table.rows) {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& cell : row) {
                // cells are numbers except for labels
                char* end = nullptr;
                const double x = std::strtod(cell.c_str(), &end);
                if (end && *end == '\0' && !cell.empty())
                    jr.push_back(x);
                else
                    jr.push_back(cell);
            }
            rows.push_back(jr);
        }
        j["rows"] = rows;
    }
    os << j.dump(2) << "\n";
}

void emit(const Result& r, const std::string& path, const std::string& format) {
    auto write = [&](std::ostream& os) {
        if (format == "json")
            write_json(os, r);
        else
            write_csv(os, r);
        os.flush();
    };
    if (path == "-") {
        write(std::cout);
        if (!std::cout) throw IoError("emit", "cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::out | std::ios::trunc);
    if (!f) throw IoError("emit", "cannot open " + path + " for writing");
    write(f);
    f.close();
    if (!f) throw IoError("emit", "write to " + path + " failed");
}

}  // namespace wqed::cli
