#include <cmath>
#include <random>

#include "doctest.h"
#include "govlab/stats.hpp"

using namespace govlab;

TEST_CASE("small exact columns") {
    CHECK(p_mat(0, 0) == 1);
    CHECK(p_mat(0, 1) == Rational(1, 2));
    CHECK(p_mat(1, 1) == Rational(1, 2));
    CHECK(p_mat(0, 2) == Rational(6, 16));
    CHECK(p_mat(1, 2) == Rational(9, 16));
    CHECK(p_mat(2, 2) == Rational(1, 16));
    CHECK(p_alt(2, 2) == Rational(1, 2));
    CHECK(p_alt(0, 2) == Rational(1, 2));
    CHECK(p_alt(1, 3) == Rational(7, 8));
    CHECK(p_alt(3, 3) == Rational(1, 8));
    CHECK(p_alt(1, 1) == 1);
    CHECK(p_alt(1, 2) == 0);
    CHECK(p_mat(3, 2) == 0);
}

TEST_CASE("closed forms match enumeration and sum to one") {
    for (int m = 0; m <= 4; ++m) {
        auto col = p_mat_enumerated(m);
        for (int j = 0; j <= m; ++j) CHECK(p_mat(j, m) == col[j]);
    }
    for (int m = 0; m <= 5; ++m) {
        auto col = p_alt_enumerated(m);
        for (int j = 0; j <= m; ++j) CHECK(p_alt(j, m) == col[j]);
    }
    for (int m = 0; m <= 12; ++m) {
        Rational s1 = 0, s2 = 0;
        for (int j = 0; j <= m; ++j) {
            s1 += p_mat(j, m);
            s2 += p_alt(j, m);
        }
        CHECK(s1 == 1);
        CHECK(s2 == 1);
    }
}

TEST_CASE("symbol model agrees with genericity on odd discriminants") {
    // d = -(product of odd primes), d p0 = 1 mod 4: the model sees every place
    std::mt19937_64 rng(17);
    const auto& ps = primes_below(120);
    int tested = 0, nongeneric = 0;
    while (tested < 600) {
        int r = 2 + static_cast<int>(rng() % 4);
        std::vector<i64> q;
        while (static_cast<int>(q.size()) < r) {
            i64 p = ps[rng() % ps.size()];
            if (p < 3 || p >= 120 || std::find(q.begin(), q.end(), p) != q.end()) continue;
            q.push_back(p);
        }
        i64 d = -1;
        for (int i = 1; i < r; ++i) d *= q[i];
        if (mod(d * q[0], 4) != 1) continue;
        std::vector<int> e(r);
        std::vector<std::vector<int>> L(r, std::vector<int>(r, 0));
        for (int i = 0; i < r; ++i) {
            e[i] = q[i] % 4 == 3;
            for (int j = 0; j < r; ++j)
                if (i != j) L[i][j] = legendre(q[i], q[j]) == -1;
        }
        bool ng = model_nongeneric(e, L);
        CHECK_MESSAGE(ng == !is_generic(d, q[0]), d << " " << q[0]);
        nongeneric += ng;
        ++tested;
    }
    CHECK(nongeneric > 0);
}

TEST_CASE("genericity density: exact small cases and simulation") {
    CHECK(genericity_density_exact(1) == 0);
    for (int r = 2; r <= 4; ++r) {
        double exact = genericity_density_exact(r).convert_to<double>();
        double sim = genericity_density_sim({r}, 40000, 100 + r).at(r);
        CHECK_MESSAGE(std::abs(sim - exact) < 0.01, r << " " << exact << " " << sim);
    }
    auto f = genericity_density_sim({4, 6, 8, 10}, 20000, 5);
    CHECK(f[4] > f[6]);
    CHECK(f[6] > f[8]);
    CHECK(f[8] > f[10]);
    CHECK(fitted_decay_ratio(f) < 0.85);
}

TEST_CASE("tuple family") {
    double last = 1;
    for (i64 N : {10000, 100000, 1000000}) {
        TupleFamily fam(N, 2, true, 9);
        for (int s = 0; s < 200; ++s) {
            auto t = fam.next();
            i64 prod = 1;
            for (i64 p : t.primes) prod *= p;
            CHECK(prod == t.n);
            CHECK(t.n < N);
            CHECK(t.n % 2 == 1);
            CHECK(is_squarefree(t.n));
            CHECK(fam.in_range(static_cast<int>(t.primes.size())));
        }
        auto rep = tuple_report(N, 2, false, 60000, 21);
        CHECK(rep.small_p1 < last);
        last = rep.small_p1;
        CHECK(rep.bound_violation <= rep.small_p1);
        CHECK(std::abs(rep.mean_r - std::log(std::log(double(N)))) < 1.0);
    }
}

TEST_CASE("2-adic cokernels") {
    std::vector<std::vector<u64>> M{{1, 0, 0}, {0, 2, 0}, {0, 0, 4}};
    auto v = cokernel_valuations(M, 3);
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<int>{0, 1, 2});
    std::vector<std::vector<u64>> Z{{2, 4}, {6, 4}};  // det = -16, Smith form diag(2, 8)
    v = cokernel_valuations(Z, 3);
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<int>{1, 3});

    auto counts = cokernel_sim(8, 3, 40000, 4);
    for (int m = 1; m <= 2; ++m) {
        i64 tot = 0;
        for (auto& [j, c] : counts[m]) tot += c;
        REQUIRE(tot > 1500);
        for (int j = 0; j <= m; ++j) {
            double f = double(counts[m][j]) / double(tot);
            CHECK_MESSAGE(std::abs(f - p_mat(j, m).convert_to<double>()) < 0.04, m << " " << j << " " << f);
        }
    }
}

TEST_CASE("class survey bookkeeping") {
    auto triv = make_governing_context(-3, 5);
    auto h0 = survey_class(triv, 3000, 2);
    CHECK(h0.total == static_cast<i64>(governed_primes(triv, 3000).size()));
    CHECK(h0.frequency(0) == 1.0);

    auto ctx = make_governing_context(-4, 17);
    std::vector<ClassRow> rows1, rows2;
    auto h1 = survey_class(ctx, 20000, 1, &rows1);
    auto h2 = survey_class(ctx, 20000, 3, &rows2);
    CHECK(h1.counts == h2.counts);
    REQUIRE(rows1.size() == rows2.size());
    for (std::size_t k = 0; k < rows1.size(); ++k) {
        CHECK(rows1[k].p == rows2[k].p);
        CHECK(rows1[k].predicted == rows1[k].oracle);
        if (k) CHECK(rows1[k - 1].p < rows1[k].p);
    }
    i64 sum = 0;
    for (auto& [j, c] : h1.counts) sum += c;
    CHECK(sum == h1.total);
    Rational e = 0;
    for (auto& [j, p] : h1.expected) e += p;
    CHECK(e == 1);
}

TEST_CASE("selmer survey keeps the parity of m") {
    auto ctx = make_selmer_context(CurveData::make(0, 2, -13), 37, 150);
    auto h = survey_selmer(ctx, 20000, 2);
    CHECK_FALSE(h.advisory);
    CHECK(h.total > 50);
    for (auto& [j, c] : h.counts) CHECK((j - ctx.m) % 2 == 0);
}
