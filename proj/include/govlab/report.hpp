#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "govlab/stats.hpp"

namespace govlab {

extern const char* const kVersion;

// A table plus a summary object. CSV carries the table only; JSON carries
// {meta, rows, summary} where rows mirror the CSV records.
struct Report {
    std::string command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::ordered_json>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();

    std::string csv() const;
    std::string json() const;
    std::string render(const std::string& format) const;
};

std::string matrix_bits(const F2Matrix& M);  // rows joined by '/', e.g. "01/10"
std::string rational_str(const Rational& q);
nlohmann::ordered_json histogram_json(const RankHistogram& h);

Report classgroup_report(i64 disc);
Report redei_report(i64 a, i64 b, i64 c);
Report govern_report(i64 d, i64 p0, i64 N, int workers);
// height_bound drives the anchor search; rank_bounds also searches every twist.
Report selmer_report(const CurveData& E, i64 p0, i64 N, int workers, i64 height_bound, bool rank_bounds);
Report descent_report(const CurveData& E, i64 d_max, i64 height_bound);
Report distribution_report(int m, bool alternating);
Report genericity_report(const std::vector<int>& r_values, i64 trials, std::uint64_t seed);
Report tuple_family_report(const std::vector<i64>& Ns, i64 D, bool range_filter, i64 samples, std::uint64_t seed);
Report cokernel_report(int k, int t, i64 samples, std::uint64_t seed);
// Redei 4-rank and pairing 8-rank against the class group for lo < disc < 0, |disc| <= |lo|.
Report oracle_sweep_report(i64 lo, int workers);

}  // namespace govlab
