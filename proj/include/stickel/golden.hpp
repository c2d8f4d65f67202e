#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stickel/stickelberger.hpp"

namespace stickel {

// One transcribed row: field, recipe inputs, expected coefficients and summary columns.
struct GoldenRow {
    std::string table;
    int line = 0;
    u64 f = 0, d = 0, p = 2;
    unsigned ex = 0;
    std::string family;
    std::vector<u64> coeffs;      // empty when the table prints none
    std::vector<std::pair<std::string, std::string>> checks;   // key=value; "mod" sets the coefficient modulus
    std::string structure;        // T_K as printed: input only
};

// $STICKEL_DATA_DIR/golden if set, else the directory baked in at build time.
std::string golden_dir();
std::vector<std::string> golden_tables(const std::string& dir = "");
std::vector<GoldenRow> load_golden(const std::string& id, const std::string& dir = "");
FieldPtr golden_field(const GoldenRow& row);

struct CheckResult {
    std::string key, expected, got;
    bool ok = false;
};
struct GoldenResult {
    GoldenRow row;
    AnnihilatorReport report;
    std::vector<u64> got;          // columns, reduced by the row's modulus when one is given
    bool coeffs_ok = true;
    std::vector<CheckResult> checks;
    bool pass() const;
};
GoldenResult run_golden_row(const GoldenRow& row, unsigned threads = 1);

}  // namespace stickel
