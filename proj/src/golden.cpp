#include "stickel/golden.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stickel {

namespace fs = std::filesystem;

std::string golden_dir() {
    if (const char* e = std::getenv("STICKEL_DATA_DIR"); e && *e) return std::string(e) + "/golden";
#ifdef STICKEL_DATA_DIR
    return std::string(STICKEL_DATA_DIR) + "/golden";
#else
    return "data/golden";
#endif
}

std::vector<std::string> golden_tables(const std::string& dir) {
    std::vector<std::string> ids;
    const fs::path root = dir.empty() ? golden_dir() : dir;
    if (!fs::is_directory(root)) throw std::runtime_error("golden directory not found: " + root.string());
    for (auto& e : fs::directory_iterator(root))
        if (e.path().extension() == ".tsv") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

u64 to_u64(const std::string& s, const std::string& what, const std::string& where) {
    try {
        std::size_t pos = 0;
        u64 v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": bad " + what + " '" + s + "'");
    }
}

}  // namespace

std::vector<GoldenRow> load_golden(const std::string& id, const std::string& dir) {
    const fs::path file = fs::path(dir.empty() ? golden_dir() : dir) / (id + ".tsv");
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("unknown golden table '" + id + "' (no " + file.string() + ")");
    std::vector<GoldenRow> rows;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;   // column names
            continue;
        }
        const std::string where = file.filename().string() + ":" + std::to_string(lineno);
        auto col = split(line, '\t');
        if (col.size() != 8) throw std::invalid_argument(where + ": expected 8 columns");
        GoldenRow r;
        r.table = id;
        r.line = lineno;
        r.f = to_u64(col[0], "f", where);
        r.family = col[1];
        r.d = to_u64(col[2], "d", where);
        r.p = to_u64(col[3], "p", where);
        r.ex = static_cast<unsigned>(to_u64(col[4], "ex", where));
        if (col[5] != "-")
            for (auto& x : split(col[5], ',')) r.coeffs.push_back(to_u64(x, "coefficient", where));
        for (auto& kv : split(col[6], ';')) {
            if (kv.empty()) continue;
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument(where + ": check without '='");
            r.checks.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
        r.structure = col[7];
        rows.push_back(std::move(r));
    }
    return rows;
}

FieldPtr golden_field(const GoldenRow& row) {
    FieldDesc d;
    d.kind = row.family;
    d.f = row.f;
    d.d = row.d;
    return build_field(d);
}

bool GoldenResult::pass() const {
    if (!coeffs_ok) return false;
    for (auto& c : checks)
        if (!c.ok) return false;
    return true;
}

GoldenResult run_golden_row(const GoldenRow& row, unsigned threads) {
    GoldenResult g;
    g.row = row;
    FieldPtr K = golden_field(row);
    g.report = annihilator_A(K, row.p, row.ex, default_recipe(*K, row.p), {}, {}, threads);
    u64 mod = 0;
    for (auto& [k, v] : row.checks)
        if (k == "mod") mod = std::stoull(v);
    g.got = g.report.columns;
    if (mod)
        for (auto& x : g.got) x %= mod;
    if (!row.coeffs.empty()) g.coeffs_ok = (g.got == row.coeffs);
    for (auto& [k, v] : row.checks) {
        if (k == "mod") continue;
        CheckResult c;
        c.key = k;
        c.expected = v;
        auto it = g.report.summary.find(k);
        c.got = it == g.report.summary.end() ? "(missing)" : it->second;
        c.ok = c.got == v;
        g.checks.push_back(c);
    }
    return g;
}

}  // namespace stickel
