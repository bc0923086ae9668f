#include <random>

#include "doctest.h"
#include "govlab/gf2.hpp"

using namespace govlab;

TEST_CASE("rank and corank of small matrices") {
    F2Matrix Z(3, 3);
    CHECK(Z.rank() == 0);
    CHECK(Z.corank() == 3);
    F2Matrix I(3, 3);
    for (int i = 0; i < 3; ++i) I.set(i, i, true);
    CHECK(I.rank() == 3);
    CHECK((I + I) == Z);
    F2Matrix J(2, 2);
    J.set(0, 0, true);
    J.set(0, 1, true);
    J.set(1, 0, true);
    J.set(1, 1, true);
    CHECK(J.corank() == 1);
    CHECK(F2Matrix(0, 0).corank() == 0);
}

TEST_CASE("alternating matrices") {
    F2Matrix A(2, 2);
    CHECK(A.is_alternating());
    A.set(0, 1, true);
    CHECK_FALSE(A.is_alternating());
    A.set(1, 0, true);
    CHECK(A.is_alternating());
    A.set(1, 1, true);
    CHECK_FALSE(A.is_alternating());
}

TEST_CASE("kernel has the complementary dimension") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng() % 12);
        int r = static_cast<int>(rng() % 12);
        std::vector<std::uint64_t> rows;
        for (int i = 0; i < r; ++i) rows.push_back(rng() & ((std::uint64_t{1} << n) - 1));
        auto ker = f2_kernel(rows, n);
        CHECK(static_cast<int>(ker.size()) + f2_rank(rows) == n);
        CHECK(f2_rank(ker) == static_cast<int>(ker.size()));
        for (auto v : ker)
            for (auto row : rows) CHECK(__builtin_popcountll(v & row) % 2 == 0);
        auto basis = f2_basis(rows);
        CHECK(static_cast<int>(basis.size()) == f2_rank(rows));
        for (auto row : rows) CHECK(f2_in_span(basis, row));
    }
}

TEST_CASE("matrix rank equals the rank of its rows") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        F2Matrix M(n, n);
        std::vector<std::uint64_t> rows;
        for (int i = 0; i < n; ++i) {
            M.set_row(i, rng() & ((std::uint64_t{1} << n) - 1));
            rows.push_back(M.row(i));
        }
        CHECK(M.rank() == f2_rank(rows));
    }
}
