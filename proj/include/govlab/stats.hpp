#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "govlab/govern.hpp"
#include "govlab/selmer.hpp"

namespace govlab {

using Rational = boost::multiprecision::cpp_rational;

struct OracleMismatch : std::runtime_error {
    OracleMismatch(i64 disc, int predicted, int oracle);
};

// Probability that a uniform m x m matrix over F_2 has corank j.
Rational p_mat(int j, int m);
// Same over alternating matrices (zero unless j = m mod 2).
Rational p_alt(int j, int m);
// Column j = 0..m by full enumeration; m <= 4 resp. m <= 5.
std::vector<Rational> p_mat_enumerated(int m);
std::vector<Rational> p_alt_enumerated(int m);

struct RankHistogram {
    std::string family_desc;
    std::map<int, i64> counts;
    i64 total = 0;
    std::map<int, Rational> expected;
    bool advisory = false;  // Selmer survey over an assumed anchor

    void add(int j) {
        ++counts[j];
        ++total;
    }
    double frequency(int j) const;
    double max_deviation() const;  // over all bins, against expected
    double total_variation() const;
};

struct ClassRow {
    i64 p = 0;
    F2Matrix correction;
    int predicted = 0;
    int oracle = 0;
};

struct SelmerRow {
    i64 p = 0;
    int predicted = 0;
    int rank_lower_bound = -1;  // -1: not searched
};

// Predictions over Y_{N,d,p0}, each checked against the class group; a mismatch
// throws OracleMismatch. Rows come back sorted by p whatever the worker count.
RankHistogram survey_class(const GoverningContext& ctx, i64 N, int workers = 0, std::vector<ClassRow>* rows = nullptr);

// height_bound > 0 also runs the point search on each twist.
RankHistogram survey_selmer(const SelmerContext& ctx, i64 N, int workers = 0, std::vector<SelmerRow>* rows = nullptr,
                            i64 height_bound = 0);

// Random Legendre-symbol model for a discriminant d0 p_2...p_r times p_1.
// e[i] = 1 when p_i = 3 mod 4; L[i][j] = 1 when (p_i / p_j) = -1, i != j, with
// reciprocity L[i][j] + L[j][i] = e[i] e[j]. Index 0 is p_1.
bool model_nongeneric(const std::vector<int>& e, const std::vector<std::vector<int>>& L);
std::map<int, double> genericity_density_sim(const std::vector<int>& r_values, i64 trials, std::uint64_t seed);
// Exact fraction over all symbol assignments, r <= 5.
Rational genericity_density_exact(int r);
// exp of the least-squares slope of log(fraction) against r.
double fitted_decay_ratio(const std::map<int, double>& fractions);

// Squarefree n < N coprime to D as a tuple of its primes in random order.
struct PrimeTuple {
    i64 n = 0;
    std::vector<i64> primes;
    i64 d_2r() const { return n / primes.front(); }
};

class TupleFamily {
public:
    TupleFamily(i64 N, i64 D, bool range_filter, std::uint64_t seed);
    PrimeTuple next();
    bool in_range(int r) const;
    // d_{2:r} > N exp(-exp(sqrt(ln ln N)))
    bool violates_bound(const PrimeTuple& t) const;
    // p_1 < exp(exp(sqrt(ln ln N)))
    bool small_p1(const PrimeTuple& t) const;

    i64 N, D;
    bool range_filter;

private:
    std::mt19937_64 rng_;
    double lnln_;
};

struct TupleReport {
    i64 samples = 0;
    double small_p1 = 0;
    double bound_violation = 0;
    double mean_r = 0;
    std::map<int, i64> r_counts;
};
TupleReport tuple_report(i64 N, i64 D, bool range_filter, i64 samples, std::uint64_t seed);

// Cokernels of uniform k x k matrices over Z/2^t: counts[m][j] for 2-rank m, 4-rank j.
std::map<int, std::map<int, i64>> cokernel_sim(int k, int t, i64 samples, std::uint64_t seed);
// Elementary divisor valuations (t for zero) of a square matrix over Z/2^t.
std::vector<int> cokernel_valuations(std::vector<std::vector<u64>> M, int t);

}  // namespace govlab
