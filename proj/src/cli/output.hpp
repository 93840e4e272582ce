#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace wqed::cli {

const char* version();

// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double x);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
};

struct Result {
    std::string experiment;
    KeyValues parameters;  // every resolved setting, echoed in the header
    std::vector<std::pair<std::string, std::string>> notes;  // derived facts worth recording
    Table table;
    nlohmann::json extra;  // replaces the table in JSON output when set
};

void write_csv(std::ostream& os, const Result& r);
void write_json(std::ostream& os, const Result& r);

// Writes to path ('-' is stdout) in the given format. IoError on failure.
void emit(const Result& r, const std::string& path, const std::string& format);

}  // namespace wqed::cli
