#include "govlab/report.hpp"

#include <set>
#include <sstream>
#include <thread>

namespace govlab {

const char* const kVersion = "0.1.0";

using ojson = nlohmann::ordered_json;

namespace {

std::string cell(const ojson& v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (v.is_null()) return "";
    return v.dump();
}

std::string big_str(const BigInt& x) { return x.str(); }

ojson classes_json(const std::vector<SquareClass>& v) {
    ojson a = ojson::array();
    for (auto& c : v) a.push_back(c.value());
    return a;
}

ojson selmer_json(const std::vector<SelmerElement>& v) {
    ojson a = ojson::array();
    for (auto& F : v) a.push_back(ojson::array({F.a1.value(), F.a2.value(), F.a3().value()}));
    return a;
}

}  // namespace

std::string Report::csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string Report::json() const {
    ojson out;
    out["meta"] = {{"command", command}, {"version", kVersion}, {"seed", seed}, {"params", params}};
    ojson rs = ojson::array();
    for (auto& row : rows) {
        ojson r = ojson::object();
        for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
        rs.push_back(std::move(r));
    }
    out["rows"] = std::move(rs);
    out["summary"] = summary;
    return out.dump(2) + "\n";
}

std::string Report::render(const std::string& format) const {
    if (format == "csv") return csv();
    if (format == "json") return json();
    throw std::invalid_argument("unknown format: " + format);
}

std::string matrix_bits(const F2Matrix& M) {
    std::string s;
    for (int i = 0; i < M.rows(); ++i) {
        if (i) s += '/';
        for (int j = 0; j < M.cols(); ++j) s += M.get(i, j) ? '1' : '0';
    }
    return s;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

ojson histogram_json(const RankHistogram& h) {
    ojson bins = ojson::array();
    std::set<int> js;
    for (auto& [j, c] : h.counts) js.insert(j);
    for (auto& [j, p] : h.expected) js.insert(j);
    for (int j : js) {
        auto it = h.counts.find(j);
        auto ex = h.expected.find(j);
        bins.push_back({{"j", j},
                        {"count", it == h.counts.end() ? 0 : it->second},
                        {"frequency", h.frequency(j)},
                        {"expected", ex == h.expected.end() ? "0" : rational_str(ex->second)}});
    }
    return {{"family", h.family_desc},
            {"total", h.total},
            {"bins", bins},
            {"max_deviation", h.max_deviation()},
            {"total_variation", h.total_variation()},
            {"advisory", h.advisory}};
}

Report classgroup_report(i64 disc) {
    if (disc >= 0 || !is_fundamental(disc)) throw NotFundamental(disc);
    auto G = class_group(disc);
    Report r;
    r.command = "classgroup";
    r.params = {{"discriminant", disc}};
    r.columns = {"disc", "h", "invariants", "rank2", "rank4", "rank8"};
    std::string inv;
    for (i64 c : G.cyclic_orders) inv += (inv.empty() ? "" : "x") + std::to_string(c);
    r.rows.push_back({disc, G.h, inv.empty() ? "1" : inv, G.two_rank, G.four_rank, G.eight_rank});
    return r;
}

Report redei_report(i64 a, i64 b, i64 c) {
    SquareClass A(a), B(b), C(c);
    std::string why;
    if (!reciprocity_hypotheses(A, B, C, &why)) throw HypothesisViolation(why);
    auto L = build_redei_field(A, B);
    auto sides = reciprocity_sides(A, B, C);
    Report r;
    r.command = "redei";
    r.params = {{"a", a}, {"b", b}, {"c", c}};
    r.columns = {"a", "b", "c", "x", "y", "z", "artin_ab_c", "artin_ac_b", "equal"};
    r.rows.push_back({A.value(), B.value(), C.value(), big_str(L.sol.x), big_str(L.sol.y), big_str(L.sol.z),
                      sides.lhs.str(), sides.rhs.str(), sides.lhs == sides.rhs});
    return r;
}

Report govern_report(i64 d, i64 p0, i64 N, int workers) {
    auto ctx = make_governing_context(d, p0);
    if (!ctx.generic) throw HypothesisViolation("context (" + std::to_string(d) + ", " + std::to_string(p0) +
                                                ") is not generic");
    std::vector<ClassRow> rows;
    auto h = survey_class(ctx, N, workers, &rows);
    Report r;
    r.command = "govern";
    r.params = {{"d", d}, {"p0", p0}, {"N", N}};
    r.columns = {"p", "artin_correction", "predicted_j", "oracle_j", "match"};
    i64 mismatches = 0;
    for (auto& row : rows) {
        bool ok = row.predicted == row.oracle;
        mismatches += !ok;
        r.rows.push_back({row.p, matrix_bits(row.correction), row.predicted, row.oracle, ok});
    }
    r.summary = {{"m", ctx.m},
                 {"basis_tor", classes_json(ctx.basis_tor)},
                 {"basis_quo", classes_json(ctx.basis_quo)},
                 {"base_matrix", matrix_bits(ctx.base_matrix)},
                 {"mismatches", mismatches},
                 {"histogram", histogram_json(h)}};
    return r;
}

Report selmer_report(const CurveData& E, i64 p0, i64 N, int workers, i64 height_bound, bool rank_bounds) {
    auto ctx = make_selmer_context(E, p0, height_bound);
    if (!ctx.generic) throw HypothesisViolation("twist by " + std::to_string(p0) + " is not generic");
    std::vector<SelmerRow> rows;
    auto h = survey_selmer(ctx, N, workers, &rows, rank_bounds ? height_bound : 0);
    Report r;
    r.command = "selmer";
    r.params = {{"curve", E.str()}, {"p0", p0}, {"N", N}, {"height_bound", height_bound}, {"rank_bounds", rank_bounds}};
    r.columns = {"p", "predicted_j", "rank_lower_bound", "anchor_tag"};
    for (auto& row : rows)
        r.rows.push_back({row.p, row.predicted, row.rank_lower_bound < 0 ? ojson() : ojson(row.rank_lower_bound),
                          anchor_name(ctx.anchor)});
    r.summary = {{"m", ctx.m},
                 {"wsd_basis", selmer_json(ctx.wsd_basis)},
                 {"anchor", anchor_name(ctx.anchor)},
                 {"anchor_rank", ctx.anchor_rank},
                 {"anchor_matrix", matrix_bits(ctx.anchor_matrix)},
                 {"histogram", histogram_json(h)}};
    return r;
}

Report descent_report(const CurveData& E, i64 d_max, i64 height_bound) {
    Report r;
    r.command = "selmer-descent";
    r.params = {{"curve", E.str()}, {"d_max", d_max}, {"height_bound", height_bound}};
    r.columns = {"d", "selmer_dim", "rank_lower_bound"};
    for (i64 d = 1; d <= d_max; ++d) {
        if (!is_squarefree(d)) continue;
        r.rows.push_back({d, selmer_dim(E, d), point_search_rank(E, d, height_bound)});
    }
    return r;
}

Report distribution_report(int m, bool alternating) {
    if (m < 0 || m > 60) throw std::invalid_argument("m out of range");
    const bool enumerate = m <= (alternating ? 5 : 4);
    std::vector<Rational> en;
    if (enumerate) en = alternating ? p_alt_enumerated(m) : p_mat_enumerated(m);
    Report r;
    r.command = alternating ? "stats palt" : "stats pmat";
    r.params = {{"m", m}};
    r.columns = {"j", "probability", "enumerated", "match"};
    Rational total = 0;
    bool all = true;
    for (int j = 0; j <= m; ++j) {
        Rational p = alternating ? p_alt(j, m) : p_mat(j, m);
        total += p;
        ojson e, match;
        if (enumerate) {
            e = rational_str(en[j]);
            match = en[j] == p;
            all &= en[j] == p;
        }
        r.rows.push_back({j, rational_str(p), e, match});
    }
    r.summary = {{"sum", rational_str(total)}, {"enumerated", enumerate}, {"all_match", all}};
    return r;
}

Report genericity_report(const std::vector<int>& r_values, i64 trials, std::uint64_t seed) {
    auto f = genericity_density_sim(r_values, trials, seed);
    Report r;
    r.command = "stats genericity";
    r.seed = seed;
    r.params = {{"r", r_values}, {"trials", trials}};
    r.columns = {"r", "nongeneric_fraction", "exact"};
    for (auto& [k, x] : f) r.rows.push_back({k, x, k <= 5 ? ojson(rational_str(genericity_density_exact(k))) : ojson()});
    r.summary = {{"decay_ratio", fitted_decay_ratio(f)}};
    return r;
}

Report tuple_family_report(const std::vector<i64>& Ns, i64 D, bool range_filter, i64 samples, std::uint64_t seed) {
    Report r;
    r.command = "stats tuples";
    r.seed = seed;
    r.params = {{"N", Ns}, {"D", D}, {"range_filter", range_filter}, {"samples", samples}};
    r.columns = {"N", "samples", "mean_r", "small_p1_fraction", "bound_violation_fraction"};
    for (i64 N : Ns) {
        auto t = tuple_report(N, D, range_filter, samples, seed);
        r.rows.push_back({N, t.samples, t.mean_r, t.small_p1, t.bound_violation});
    }
    return r;
}

Report cokernel_report(int k, int t, i64 samples, std::uint64_t seed) {
    auto counts = cokernel_sim(k, t, samples, seed);
    Report r;
    r.command = "stats cokernel";
    r.seed = seed;
    r.params = {{"k", k}, {"t", t}, {"samples", samples}};
    r.columns = {"two_rank", "four_rank", "count", "frequency", "p_mat"};
    for (auto& [m, col] : counts) {
        i64 tot = 0;
        for (auto& [j, c] : col) tot += c;
        for (int j = 0; j <= m; ++j) {
            auto it = col.find(j);
            i64 c = it == col.end() ? 0 : it->second;
            r.rows.push_back({m, j, c, double(c) / double(tot), p_mat(j, m).convert_to<double>()});
        }
    }
    return r;
}

Report oracle_sweep_report(i64 lo, int workers) {
    std::vector<i64> discs;
    for (i64 D = -3; D >= lo; --D)
        if (is_fundamental(D)) discs.push_back(D);
    struct Out {
        int r4 = 0, o4 = 0, r8 = -1, o8 = -1;
    };
    std::vector<Out> res(discs.size());
    std::vector<std::thread> pool;
    int w = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
    for (int k = 0; k < w; ++k)
        pool.emplace_back([&, k] {
            for (std::size_t i = k; i < discs.size(); i += w) {
                auto ranks = two_power_ranks(discs[i]);
                res[i].r4 = redei_matrix_4rank(discs[i]).entries.corank();
                res[i].o4 = ranks.four_rank;
                if (ranks.four_rank > 0) {
                    res[i].r8 = pairing_matrix_disc(discs[i]).corank();
                    res[i].o8 = ranks.eight_rank;
                }
            }
        });
    for (auto& t : pool) t.join();
    Report r;
    r.command = "survey";
    r.params = {{"lo", lo}};
    r.columns = {"disc", "rank4_redei", "rank4_oracle", "rank8_pairing", "rank8_oracle", "match"};
    i64 mismatches = 0;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        bool ok = res[i].r4 == res[i].o4 && res[i].r8 == res[i].o8;
        mismatches += !ok;
        r.rows.push_back({discs[i], res[i].r4, res[i].o4, res[i].r8 < 0 ? ojson() : ojson(res[i].r8),
                          res[i].o8 < 0 ? ojson() : ojson(res[i].o8), ok});
    }
    r.summary = {{"discriminants", discs.size()}, {"mismatches", mismatches}};
    return r;
}

}  // namespace govlab
