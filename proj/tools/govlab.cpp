#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "govlab/report.hpp"

using namespace govlab;

namespace {

enum Exit { Ok = 0, Usage = 2, Mismatch = 3, Hypothesis = 4 };

std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("GOVLAB_SEED")) return std::stoull(s);
    return 1;
}

std::vector<i64> parse_list(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("bad integer: " + tok);
    }
    return out;
}

CurveData parse_curve(const std::string& s) {
    auto e = parse_list(s);
    if (e.size() != 3) throw std::invalid_argument("--curve needs e1,e2,e3");
    return CurveData::make(e[0], e[1], e[2]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"govlab: 8-class ranks, 4-Selmer ranks and their governing fields"};
    app.require_subcommand(1);

    i64 disc = 0, p0 = 0, N = 100000, a = 0, b = 0, c = 0, height = 150, dmax = 40;
    i64 trials = 100000, samples = 100000, D = 2;
    int workers = 0, m = 2, k = 8, t = 3;
    std::uint64_t seed = seed_from_env();
    std::string format = "csv", out_path, curve, what, rlist = "8,10,12,14,16", nlist = "10000,100000,1000000";
    bool filter = false, rank_bounds = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "random seed (default GOVLAB_SEED or 1)");
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "write here instead of stdout");
        sub->add_option("--workers", workers, "threads (default: available parallelism)");
    };

    auto* cg = app.add_subcommand("classgroup", "class group of a negative fundamental discriminant");
    cg->add_option("-d,--discriminant", disc)->required();
    common(cg);

    auto* rd = app.add_subcommand("redei", "Redei field L_{a,b} and both sides of reciprocity at c");
    rd->add_option("-a", a)->required();
    rd->add_option("-b", b)->required();
    rd->add_option("-c", c)->required();
    common(rd);

    auto* gv = app.add_subcommand("govern", "transported 8-rank predictions over the primes p < N");
    gv->add_option("-d,--discriminant", disc, "d (the family is d p)")->required();
    gv->add_option("--p0", p0)->required();
    gv->add_option("-N", N);
    common(gv);

    auto* sl = app.add_subcommand("selmer", "4-Selmer predictions, or a descent table without --p0");
    sl->add_option("--curve", curve, "e1,e2,e3")->required();
    sl->add_option("--p0", p0);
    sl->add_option("-N", N);
    sl->add_option("--height", height, "point search height bound");
    sl->add_option("--dmax", dmax, "descent table range");
    sl->add_flag("--rank-bounds", rank_bounds, "point search on every twist");
    common(sl);

    auto* st = app.add_subcommand("stats", "pmat, palt, genericity, tuples or cokernel");
    st->add_option("what", what)->required()->check(CLI::IsMember({"pmat", "palt", "genericity", "tuples", "cokernel"}));
    st->add_option("-m", m);
    st->add_option("--r", rlist, "r values for genericity");
    st->add_option("--trials", trials);
    st->add_option("--samples", samples);
    st->add_option("--Ns", nlist, "N values for tuples");
    st->add_option("-D", D);
    st->add_flag("--range-filter", filter);
    st->add_option("-k", k);
    st->add_option("-t", t);
    common(st);

    auto* sv = app.add_subcommand("survey", "Redei 4-rank and pairing 8-rank against the class group, |disc| <= N");
    sv->add_option("-N", N);
    common(sv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        Report rep;
        if (*cg) {
            rep = classgroup_report(disc);
        } else if (*rd) {
            rep = redei_report(a, b, c);
        } else if (*gv) {
            rep = govern_report(disc, p0, N, workers);
        } else if (*sl) {
            auto E = parse_curve(curve);
            rep = p0 ? selmer_report(E, p0, N, workers, height, rank_bounds) : descent_report(E, dmax, height);
        } else if (*st) {
            if (what == "pmat" || what == "palt") {
                rep = distribution_report(m, what == "palt");
            } else if (what == "genericity") {
                std::vector<int> rs;
                for (i64 r : parse_list(rlist)) rs.push_back(static_cast<int>(r));
                rep = genericity_report(rs, trials, seed);
            } else if (what == "tuples") {
                rep = tuple_family_report(parse_list(nlist), D, filter, samples, seed);
            } else {
                rep = cokernel_report(k, t, samples, seed);
            }
        } else if (*sv) {
            rep = oracle_sweep_report(-N, workers);
        }
        rep.seed = seed;
        std::string text = rep.render(format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::invalid_argument("cannot open " + out_path);
            f << text;
        }
        if (rep.summary.contains("mismatches") && rep.summary["mismatches"].get<i64>() != 0) {
            std::cerr << "oracle mismatches: " << rep.summary["mismatches"] << "\n";
            return Mismatch;
        }
        return Ok;
    } catch (const OracleMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Mismatch;
    } catch (const HypothesisViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Hypothesis;
    } catch (const LocalObstruction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Hypothesis;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return Usage;
    }
}
