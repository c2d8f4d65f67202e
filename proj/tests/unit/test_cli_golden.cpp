#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "stickel/golden.hpp"

using namespace stickel;

TEST_CASE("golden corpus is present") {
    auto ids = golden_tables();
    for (const char* want : {"cubic-p7", "cubic-p13", "quadratic-p2", "quartic-prime-p2", "quartic-composite-p2",
                             "cubic-prime-p2", "worked"})
        CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
    CHECK_THROWS(load_golden("no-such-table"));
}

TEST_CASE("every golden row reproduces") {
    int rows = 0;
    for (const auto& id : golden_tables()) {
        for (const auto& row : load_golden(id)) {
            auto res = run_golden_row(row, 2);
            INFO(id << " f=" << row.f);
            CHECK(res.pass());
            ++rows;
        }
    }
    CHECK(rows >= 100);
}

TEST_CASE("row fields carry the table metadata") {
    auto rows = load_golden("worked");
    auto it = std::find_if(rows.begin(), rows.end(), [](const GoldenRow& r) { return r.f == 3433; });
    REQUIRE(it != rows.end());
    CHECK(it->p == 2);
    CHECK(it->coeffs == std::vector<u64>{104, 42, 112, 46});
    bool has_mod = false;
    for (auto& [k, v] : it->checks) has_mod |= (k == "mod" && v == "128");
    CHECK(has_mod);
    CHECK(golden_field(*it)->degree() == 4);
}

TEST_CASE("a tampered row is reported as a mismatch") {
    auto rows = load_golden("cubic-p7");
    REQUIRE_FALSE(rows.empty());
    auto r = rows.front();
    r.coeffs[0] += 1;
    CHECK_FALSE(run_golden_row(r).pass());
    auto r2 = rows.front();
    r2.checks = {{"nj", "99"}};
    auto res = run_golden_row(r2);
    CHECK_FALSE(res.pass());
    REQUIRE(res.checks.size() == 1);
    CHECK(res.checks[0].got == "2");
}

TEST_CASE("malformed table files are rejected") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "stickel_golden_test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "bad.tsv");
        out << "f\tfamily\td\tp\tex\tcoeffs\tchecks\tstructure\n";
        out << "313\tcyclic-prime\t3\tseven\t1\t41,41,48\tnj=2\t[]\n";
    }
    CHECK_THROWS(load_golden("bad", dir.string()));
    fs::remove_all(dir);
}
