#include <random>

#include "doctest.h"
#include "govlab/govern.hpp"

using namespace govlab;

namespace {

// Membership of a square class a | d in each V-space, straight from the definitions.
bool in_tor(i64 disc, i64 a) {
    if (a < 0) return false;
    for (i64 D : prime_discriminants(disc))
        if (genus_character(D, disc, a) == -1) return false;
    return true;
}

bool in_quo(i64 disc, i64 a) {
    i64 D1 = field_discriminant(SquareClass(a));
    if (disc % D1 != 0) return false;
    i64 D2 = disc / D1;
    if (mod(D2, 4) > 1 || (D1 % 2 == 0 && D2 % 2 == 0)) return false;
    for (i64 q : prime_divisors(disc))
        if (genus_character(D1, disc, q) == -1) return false;
    return true;
}

bool generic_brute(i64 d, i64 p0) {
    auto ps = prime_divisors(-d);
    const int n = static_cast<int>(ps.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
        i64 a = 1;
        for (int j = 0; j < n; ++j)
            if ((mask >> j) & 1) a *= ps[j];
        if (in_tor(d * p0, a) && in_quo(d * p0, a)) return false;
    }
    return true;
}

std::pair<i64, i64> random_context(std::mt19937_64& rng) {
    const auto& ps = primes_below(200);
    for (;;) {
        i64 d = -static_cast<i64>(rng() % 10000) - 3;
        i64 p0 = ps[rng() % ps.size()];
        if (p0 < 3 || p0 >= 200 || d % p0 == 0 || !is_fundamental(d * p0)) continue;
        return {d, p0};
    }
}

}  // namespace

TEST_CASE("v-space dimensions equal the 4-rank") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        auto [d, p0] = random_context(rng);
        auto v = v_spaces(d, p0);
        int r4 = two_power_ranks(d * p0).four_rank;
        CHECK(static_cast<int>(v.tor.size()) == r4);
        CHECK(static_cast<int>(v.quo.size()) == r4);
        SquareClass D0 = squarefree_part(d * p0).s;
        for (auto& b : v.tor) {
            CHECK(!b.is_one());
            CHECK(b.value() > 0);
            CHECK((-d) % b.value() == 0);
            CHECK(hilbert_trivial_everywhere(b, D0));
        }
        for (auto& a : v.quo) {
            CHECK(!a.is_one());
            CHECK((-d) % a.value() == 0);
            CHECK(hilbert_trivial_everywhere(a, SquareClass(-D0.value())));
        }
    }
}

TEST_CASE("Hilbert condition alone over-counts V_Quo at 2") {
    // a = -1 satisfies (a, 52)_v = 1 everywhere but Q(sqrt -13) has 4-rank 0
    CHECK(hilbert_trivial_everywhere(SquareClass(-1), SquareClass(13)));
    CHECK(v_spaces(-4, 13).quo.empty());
    CHECK(two_power_ranks(-52).four_rank == 0);
}

TEST_CASE("is_generic agrees with divisor enumeration") {
    std::mt19937_64 rng(11);
    int nongeneric = 0;
    for (int i = 0; i < 400; ++i) {
        auto [d, p0] = random_context(rng);
        bool g = is_generic(d, p0);
        CHECK_MESSAGE(g == generic_brute(d, p0), d << " " << p0);
        nongeneric += !g;
        if (v_spaces(d, p0).tor.empty()) CHECK(g);
    }
    CHECK(nongeneric > 0);
}

TEST_CASE("pairing corank is the 8-rank for |disc| < 20000") {
    int tested = 0;
    for (i64 D = -3; D > -20000; --D) {
        if (!is_fundamental(D)) continue;
        auto r = two_power_ranks(D);
        if (r.four_rank == 0) continue;
        CHECK_MESSAGE(pairing_matrix_disc(D).corank() == r.eight_rank, D);
        ++tested;
    }
    CHECK(tested > 2000);
    CHECK(pairing_matrix_disc(-4).rows() == 0);
}

TEST_CASE("pairing does not depend on the ideal chosen in the class of b") {
    // b and b * (relation norm) / gcd^2 name the same class
    for (auto [d, p0] : std::vector<std::pair<i64, i64>>{{-264, 97}, {-276, 73}, {-4, 17}, {-39, 37}}) {
        i64 disc = d * p0;
        auto v = v_spaces(d, p0);
        i64 n = squarefree_part(mod(disc, 4) == 1 ? -disc : -disc / 4).s.value();
        for (auto& a : v.quo)
            for (auto& b : v.tor) {
                i64 g = std::gcd(b.value(), n);
                i64 b2 = b.value() / g * (n / g);
                CHECK(pairing(disc, a, b) == pairing(disc, a, SquareClass(b2)));
            }
    }
}

TEST_CASE("governing context examples") {
    auto ctx = make_governing_context(-264, 97);
    CHECK(ctx.m == 2);
    CHECK(ctx.generic);
    CHECK(ctx.base_matrix.corank() == eight_rank_oracle(ctx.disc0));
    CHECK(transport_matrix(ctx, 97) == ctx.base_matrix);

    auto triv = make_governing_context(-3, 5);
    CHECK(triv.m == 0);
    CHECK(triv.generic);
    for (i64 p : governed_primes(triv, 2000)) CHECK(predict_8rank(triv, p) == 0);

    CHECK_THROWS_AS(transport_matrix(ctx, 101), HypothesisViolation);
}

TEST_CASE("transport agrees with the class group oracle") {
    for (auto [d, p0] : std::vector<std::pair<i64, i64>>{{-4, 17}, {-20, 13}, {-88, 3}, {-264, 97}, {-276, 73}}) {
        auto ctx = make_governing_context(d, p0);
        REQUIRE(ctx.generic);
        auto fam = governed_primes(ctx, 20000);
        CHECK(fam.size() > 50);
        for (i64 p : fam) {
            auto T = transport_matrix(ctx, p);
            CHECK_MESSAGE(T.corank() == eight_rank_oracle(d * p), d << " " << p);
            CHECK(T + correction_matrix(ctx, p) == ctx.base_matrix);
            auto v = v_spaces(d, p);
            CHECK(v.tor == ctx.basis_tor);
            CHECK(v.quo == ctx.basis_quo);
        }
    }
}

TEST_CASE("transport refuses non-generic contexts") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        auto [d, p0] = random_context(rng);
        if (is_generic(d, p0)) continue;
        auto ctx = make_governing_context(d, p0);
        CHECK_THROWS_AS(transport_matrix(ctx, p0), HypothesisViolation);
        return;
    }
    FAIL("no non-generic context sampled");
}
