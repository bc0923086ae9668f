#pragma once

#include <vector>

#include "govlab/arith.hpp"
#include "govlab/gf2.hpp"

namespace govlab {

struct QuadForm {
    i64 a = 1, b = 0, c = 1;

    i64 disc() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool operator==(const QuadForm&) const = default;
};

QuadForm reduce(QuadForm f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm identity_form(i64 disc);
QuadForm inverse(const QuadForm& f);
// Reduced form of the ideal of norm n (n | disc, or n coprime with disc a square mod 4n):
// (n, beta, .) with the smallest beta >= 0 such that beta^2 = disc mod 4n.
QuadForm ideal_form(i64 disc, i64 n);

// All reduced forms of a negative discriminant, in (a, b) order.
std::vector<QuadForm> reduced_forms(i64 disc);

struct ClassGroupStructure {
    i64 discriminant = 0;
    i64 h = 0;
    std::vector<i64> cyclic_orders;  // d1 | d2 | ...
    int two_rank = 0, four_rank = 0, eight_rank = 0;
};

ClassGroupStructure class_group(i64 disc);

// 2-power ranks only (via the squaring map); cheaper than class_group.
struct TwoRanks {
    int two_rank = 0, four_rank = 0, eight_rank = 0;
};
TwoRanks two_power_ranks(i64 disc);
int eight_rank_oracle(i64 disc);

// Prime discriminants p* (with p* = 1 mod 4 for odd p, and -4, 8, -8 at 2) whose product is disc.
std::vector<i64> prime_discriminants(i64 disc);

struct RedeiMatrix {
    std::vector<SquareClass> basis_tor;  // norms of ramified primes (one dropped)
    std::vector<SquareClass> basis_quo;  // prime discriminants (one dropped)
    F2Matrix entries;                     // entries(i, j): character quo_i on ideal tor_j
};

RedeiMatrix redei_matrix_4rank(i64 disc);

// Genus character chi_D (D a discriminant divisor of disc) on an ideal of norm n.
int genus_character(i64 D, i64 disc, i64 n);

}  // namespace govlab
