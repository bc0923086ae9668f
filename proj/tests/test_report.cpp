#include <sstream>

#include "doctest.h"
#include "govlab/report.hpp"

using namespace govlab;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        out.push_back(cells);
    }
    return out;
}

// CSV cells and JSON rows carry the same values
void check_equivalent(const Report& r) {
    auto csv = parse_csv(r.csv());
    auto js = nlohmann::json::parse(r.json());
    REQUIRE(csv.size() == r.rows.size() + 1);
    CHECK(csv[0] == r.columns);
    REQUIRE(js["rows"].size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        for (std::size_t k = 0; k < r.columns.size(); ++k) {
            const auto& v = js["rows"][i][r.columns[k]];
            std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
            CHECK(s == csv[i + 1][k]);
        }
}

}  // namespace

TEST_CASE("classgroup report") {
    auto r = classgroup_report(-15);
    CHECK(r.csv() == "disc,h,invariants,rank2,rank4,rank8\n-15,2,2,1,0,0\n");
    auto r4 = classgroup_report(-4);
    CHECK(r4.rows[0][1] == 1);
    CHECK(r4.rows[0][3] == 0);
    CHECK_THROWS_AS(classgroup_report(-16), NotFundamental);
    CHECK_THROWS_AS(r.render("xml"), std::invalid_argument);
    check_equivalent(r);
}

TEST_CASE("govern report headers, equivalence and determinism") {
    auto r = govern_report(-264, 97, 4000, 2);
    CHECK(r.columns == std::vector<std::string>{"p", "artin_correction", "predicted_j", "oracle_j", "match"});
    CHECK(r.summary["mismatches"] == 0);
    check_equivalent(r);
    auto again = govern_report(-264, 97, 4000, 1);
    CHECK(again.json() == r.json());
    CHECK(again.csv() == r.csv());
    auto meta = nlohmann::json::parse(r.json())["meta"];
    CHECK(meta["version"] == kVersion);
    CHECK(meta["params"]["p0"] == 97);

    auto triv = govern_report(-3, 5, 3000, 1);
    CHECK(triv.summary["m"] == 0);
    for (auto& row : triv.rows) CHECK(row[2] == 0);
}

TEST_CASE("selmer report") {
    auto r = selmer_report(CurveData::make(0, 2, -13), 37, 3000, 1, 150, false);
    CHECK(r.columns == std::vector<std::string>{"p", "predicted_j", "rank_lower_bound", "anchor_tag"});
    for (auto& row : r.rows) {
        CHECK(row[2].is_null());
        CHECK(row[3] == "ProvenZero");
    }
    check_equivalent(r);
    auto d = descent_report(CurveData::make(-1, 0, 1), 7, 100);
    CHECK(d.rows.size() == 6);
    check_equivalent(d);
}

TEST_CASE("stats reports") {
    auto p = distribution_report(3, false);
    CHECK(p.summary["sum"] == "1");
    CHECK(p.summary["all_match"] == true);
    auto q = distribution_report(4, true);
    CHECK(q.summary["all_match"] == true);
    check_equivalent(q);
    auto g = genericity_report({2, 4}, 1000, 3);
    CHECK(g.json() == genericity_report({2, 4}, 1000, 3).json());
    check_equivalent(g);
    check_equivalent(cokernel_report(4, 3, 500, 2));
    check_equivalent(tuple_family_report({1000, 10000}, 2, true, 300, 2));
}

TEST_CASE("oracle sweep") {
    auto r = oracle_sweep_report(-2000, 2);
    CHECK(r.summary["mismatches"] == 0);
    CHECK(r.summary["discriminants"].get<i64>() == static_cast<i64>(r.rows.size()));
    check_equivalent(r);
}
