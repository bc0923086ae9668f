#include "govlab/stats.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace govlab {

OracleMismatch::OracleMismatch(i64 disc, int predicted, int oracle)
    : std::runtime_error("oracle mismatch at disc " + std::to_string(disc) + ": predicted " + std::to_string(predicted) +
                         ", class group " + std::to_string(oracle)) {}

namespace {

Rational pow2(int e) { return Rational(BigInt(1) << e); }

// number of m x m matrices of rank r
Rational count_rank(int m, int r) {
    Rational c = 1;
    for (int i = 0; i < r; ++i) {
        Rational a = pow2(m) - pow2(i);
        c *= a * a / (pow2(r) - pow2(i));
    }
    return c;
}

// number of alternating m x m matrices of rank 2s
Rational count_alt_rank(int m, int s) {
    Rational c = 1;
    for (int i = 0; i < s; ++i) c *= pow2(2 * i) / (pow2(2 * i + 2) - 1);
    for (int i = 0; i < 2 * s; ++i) c *= pow2(m - i) - 1;
    return c;
}

int workers_or_default(int workers) {
    if (workers > 0) return workers;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

// Runs f(k) for k in [0, n) on strided workers; rethrows the first failure.
template <class F>
void parallel_for(std::size_t n, int workers, F f) {
    workers = std::max(1, std::min<int>(workers_or_default(workers), static_cast<int>(std::max<std::size_t>(n, 1))));
    std::exception_ptr err;
    std::mutex mu;
    auto run = [&](int w) {
        try {
            for (std::size_t k = w; k < n; k += workers) {
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (err) return;
                }
                f(k);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

Rational p_mat(int j, int m) {
    if (j < 0 || j > m) return 0;
    return count_rank(m, m - j) / pow2(m * m);
}

Rational p_alt(int j, int m) {
    if (j < 0 || j > m || (m - j) % 2) return 0;
    return count_alt_rank(m, (m - j) / 2) / pow2(m * (m - 1) / 2);
}

std::vector<Rational> p_mat_enumerated(int m) {
    if (m > 4) throw std::invalid_argument("enumeration limited to m <= 4");
    std::vector<i64> counts(m + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << (m * m);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        F2Matrix M(m, m);
        for (int i = 0; i < m; ++i) M.set_row(i, (bits >> (i * m)) & ((std::uint64_t{1} << m) - 1));
        ++counts[M.corank()];
    }
    std::vector<Rational> out;
    for (i64 c : counts) out.push_back(Rational(c) / pow2(m * m));
    return out;
}

std::vector<Rational> p_alt_enumerated(int m) {
    if (m > 5) throw std::invalid_argument("enumeration limited to m <= 5");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) slots.push_back({i, j});
    std::vector<i64> counts(m + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        F2Matrix M(m, m);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((bits >> s) & 1) {
                M.set(slots[s].first, slots[s].second, true);
                M.set(slots[s].second, slots[s].first, true);
            }
        ++counts[M.corank()];
    }
    std::vector<Rational> out;
    for (i64 c : counts) out.push_back(Rational(c) / Rational(BigInt(total)));
    return out;
}

double RankHistogram::frequency(int j) const {
    auto it = counts.find(j);
    if (total == 0 || it == counts.end()) return 0;
    return static_cast<double>(it->second) / static_cast<double>(total);
}

double RankHistogram::max_deviation() const {
    double d = 0;
    for (auto& [j, p] : expected) d = std::max(d, std::abs(frequency(j) - p.convert_to<double>()));
    for (auto& [j, c] : counts)
        if (!expected.count(j)) d = std::max(d, frequency(j));
    return d;
}

double RankHistogram::total_variation() const {
    double s = 0;
    for (auto& [j, p] : expected) s += std::abs(frequency(j) - p.convert_to<double>());
    for (auto& [j, c] : counts)
        if (!expected.count(j)) s += frequency(j);
    return s / 2;
}

RankHistogram survey_class(const GoverningContext& ctx, i64 N, int workers, std::vector<ClassRow>* rows) {
    if (!ctx.generic) throw HypothesisViolation("survey needs a generic context");
    auto fam = governed_primes(ctx, N);
    std::vector<ClassRow> out(fam.size());
    parallel_for(fam.size(), workers, [&](std::size_t k) {
        ClassRow& r = out[k];
        r.p = fam[k];
        r.correction = correction_matrix(ctx, r.p);
        r.predicted = (ctx.base_matrix + r.correction).corank();
        r.oracle = eight_rank_oracle(ctx.d * r.p);
        if (r.predicted != r.oracle) throw OracleMismatch(ctx.d * r.p, r.predicted, r.oracle);
    });
    RankHistogram h;
    std::ostringstream desc;
    desc << "Y(N=" << N << ", d=" << ctx.d << ", p0=" << ctx.p0 << "), m=" << ctx.m;
    h.family_desc = desc.str();
    for (int j = 0; j <= ctx.m; ++j) h.expected[j] = p_mat(j, ctx.m);
    for (auto& r : out) h.add(r.predicted);
    if (rows) *rows = std::move(out);
    return h;
}

RankHistogram survey_selmer(const SelmerContext& ctx, i64 N, int workers, std::vector<SelmerRow>* rows, i64 height_bound) {
    if (!ctx.generic) throw HypothesisViolation("survey needs a generic twist");
    auto fam = selmer_family(ctx, N);
    std::vector<SelmerRow> out(fam.size());
    parallel_for(fam.size(), workers, [&](std::size_t k) {
        SelmerRow& r = out[k];
        r.p = fam[k];
        r.predicted = predict_4selmer(ctx, r.p);
        if (height_bound > 0) r.rank_lower_bound = point_search_rank(ctx.curve, r.p, height_bound);
    });
    RankHistogram h;
    h.family_desc = "Y(N=" + std::to_string(N) + ", E=" + ctx.curve.str() + ", p0=" + std::to_string(ctx.p0) +
                    "), m=" + std::to_string(ctx.m);
    h.advisory = ctx.anchor == AnchorTag::Assumed;
    for (int j = 0; j <= ctx.m; ++j) h.expected[j] = p_alt(j, ctx.m);
    for (auto& r : out) h.add(r.predicted);
    if (rows) *rows = std::move(out);
    return h;
}

bool model_nongeneric(const std::vector<int>& e, const std::vector<std::vector<int>>& L) {
    // a = prod_{i in S} p_i (S inside 2..r) lies in V_ng iff every p_i in S is 1 mod 4
    // and for each j: sum_{i in S} L[i][j] + [j in S] sum_{k != j} L[k][j] = 0.
    const int r = static_cast<int>(e.size());
    std::vector<std::uint64_t> cols;
    for (int i = 1; i < r; ++i) {
        if (e[i]) continue;
        std::uint64_t c = 0;
        for (int j = 0; j < r; ++j) {
            int bit = 0;
            if (j != i)
                bit = L[i][j];
            else
                for (int k = 0; k < r; ++k)
                    if (k != j) bit ^= L[k][j];
            if (bit) c |= std::uint64_t{1} << j;
        }
        cols.push_back(c);
    }
    return f2_rank(cols) < static_cast<int>(cols.size());
}

namespace {

void fill_symbols(int r, std::uint64_t ebits, std::uint64_t lbits, std::vector<int>& e, std::vector<std::vector<int>>& L) {
    e.assign(r, 0);
    L.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) e[i] = (ebits >> i) & 1;
    int s = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j, ++s) {
            L[i][j] = (lbits >> s) & 1;
            L[j][i] = L[i][j] ^ (e[i] & e[j]);
        }
}

}  // namespace

std::map<int, double> genericity_density_sim(const std::vector<int>& r_values, i64 trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    std::map<int, double> out;
    std::vector<int> e;
    std::vector<std::vector<int>> L;
    for (int r : r_values) {
        if (r < 1 || r > 40) throw std::invalid_argument("r out of range");
        i64 bad = 0;
        for (i64 t = 0; t < trials; ++t) {
            e.assign(r, 0);
            L.assign(r, std::vector<int>(r, 0));
            std::uint64_t eb = rng();
            for (int i = 0; i < r; ++i) e[i] = (eb >> i) & 1;
            for (int i = 0; i < r; ++i) {
                std::uint64_t lb = rng();
                for (int j = i + 1; j < r; ++j) {
                    L[i][j] = (lb >> j) & 1;
                    L[j][i] = L[i][j] ^ (e[i] & e[j]);
                }
            }
            bad += model_nongeneric(e, L);
        }
        out[r] = static_cast<double>(bad) / static_cast<double>(trials);
    }
    return out;
}

Rational genericity_density_exact(int r) {
    if (r < 1 || r > 5) throw std::invalid_argument("exact density limited to 1 <= r <= 5");
    const int lb = r * (r - 1) / 2;
    std::vector<int> e;
    std::vector<std::vector<int>> L;
    i64 bad = 0;
    for (std::uint64_t eb = 0; eb < (std::uint64_t{1} << r); ++eb)
        for (std::uint64_t l = 0; l < (std::uint64_t{1} << lb); ++l) {
            fill_symbols(r, eb, l, e, L);
            bad += model_nongeneric(e, L);
        }
    return Rational(bad) / pow2(r + lb);
}

double fitted_decay_ratio(const std::map<int, double>& fractions) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [r, f] : fractions) {
        if (f <= 0) continue;
        double y = std::log(f);
        n += 1;
        sx += r;
        sy += y;
        sxx += double(r) * r;
        sxy += r * y;
    }
    if (n < 2) return std::nan("");
    return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

TupleFamily::TupleFamily(i64 N_, i64 D_, bool filter, std::uint64_t seed)
    : N(N_), D(D_), range_filter(filter), rng_(seed), lnln_(std::log(std::log(static_cast<double>(N_)))) {
    if (N < 16 || D <= 0 || D % 2) throw std::invalid_argument("need N >= 16 and D positive even");
}

bool TupleFamily::in_range(int r) const {
    double w = std::pow(lnln_, 0.75);
    return r > lnln_ - w && r < lnln_ + w;
}

bool TupleFamily::violates_bound(const PrimeTuple& t) const {
    return static_cast<double>(t.d_2r()) > static_cast<double>(N) * std::exp(-std::exp(std::sqrt(lnln_)));
}

bool TupleFamily::small_p1(const PrimeTuple& t) const {
    return static_cast<double>(t.primes.front()) < std::exp(std::exp(std::sqrt(lnln_)));
}

PrimeTuple TupleFamily::next() {
    std::uniform_int_distribution<i64> pick(2, N - 1);
    for (;;) {
        i64 n = pick(rng_);
        if (govlab::gcd(n, D) != 1) continue;
        auto f = factorize(n);
        bool sqf = true;
        for (auto& [p, e] : f) sqf &= e == 1;
        if (!sqf) continue;
        if (range_filter && !in_range(static_cast<int>(f.size()))) continue;
        PrimeTuple t{n, {}};
        for (auto& [p, e] : f) t.primes.push_back(p);
        std::shuffle(t.primes.begin(), t.primes.end(), rng_);
        return t;
    }
}

TupleReport tuple_report(i64 N, i64 D, bool range_filter, i64 samples, std::uint64_t seed) {
    TupleFamily fam(N, D, range_filter, seed);
    TupleReport rep;
    rep.samples = samples;
    i64 small = 0, viol = 0, rsum = 0;
    for (i64 s = 0; s < samples; ++s) {
        auto t = fam.next();
        small += fam.small_p1(t);
        viol += fam.violates_bound(t);
        int r = static_cast<int>(t.primes.size());
        rsum += r;
        ++rep.r_counts[r];
    }
    rep.small_p1 = double(small) / double(samples);
    rep.bound_violation = double(viol) / double(samples);
    rep.mean_r = double(rsum) / double(samples);
    return rep;
}

std::vector<int> cokernel_valuations(std::vector<std::vector<u64>> M, int t) {
    const int k = static_cast<int>(M.size());
    const u64 mask = (u64{1} << t) - 1;
    auto val = [&](u64 x) { return x == 0 ? t : std::min(t, __builtin_ctzll(x)); };
    std::vector<int> out;
    for (int s = 0; s < k; ++s) {
        int bi = -1, bj = -1, bv = t;
        for (int i = s; i < k; ++i)
            for (int j = s; j < k; ++j)
                if (int v = val(M[i][j] & mask); v < bv) bv = v, bi = i, bj = j;
        if (bi < 0) {
            out.insert(out.end(), k - s, t);
            break;
        }
        std::swap(M[s], M[bi]);
        for (int i = 0; i < k; ++i) std::swap(M[i][s], M[i][bj]);
        u64 u = (M[s][s] & mask) >> bv, inv = u;
        for (int it = 0; it < 6; ++it) inv *= 2 - u * inv;
        for (int j = s; j < k; ++j) M[s][j] = (M[s][j] * inv) & mask;
        // pivot is now 2^bv; every other entry is divisible by it
        for (int i = s + 1; i < k; ++i) {
            u64 f = (M[i][s] & mask) >> bv;
            for (int j = s; j < k; ++j) M[i][j] = (M[i][j] - f * M[s][j]) & mask;
        }
        for (int j = s + 1; j < k; ++j) {
            u64 f = (M[s][j] & mask) >> bv;
            for (int i = s; i < k; ++i) M[i][j] = (M[i][j] - f * M[i][s]) & mask;
        }
        out.push_back(bv);
    }
    return out;
}

std::map<int, std::map<int, i64>> cokernel_sim(int k, int t, i64 samples, std::uint64_t seed) {
    if (k < 1 || t < 2 || t > 60) throw std::invalid_argument("need k >= 1 and 2 <= t <= 60");
    std::mt19937_64 rng(seed);
    std::map<int, std::map<int, i64>> out;
    std::vector<std::vector<u64>> M(k, std::vector<u64>(k));
    for (i64 s = 0; s < samples; ++s) {
        for (auto& row : M)
            for (auto& x : row) x = rng() & ((u64{1} << t) - 1);
        int m = 0, j = 0;
        for (int v : cokernel_valuations(M, t)) {
            m += v >= 1;
            j += v >= 2;
        }
        ++out[m][j];
    }
    return out;
}

}  // namespace govlab
