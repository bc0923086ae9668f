#pragma once

#include <vector>

#include "govlab/classgroup.hpp"
#include "govlab/redei.hpp"

namespace govlab {

struct VSpaces {
    std::vector<SquareClass> tor;  // positive b | d with the ideal of norm b in 2 Cl
    std::vector<SquareClass> quo;  // a | d whose genus character kills Cl[2]
};

// Discriminant of Q(sqrt a).
i64 field_discriminant(const SquareClass& a);

// V-spaces of a negative fundamental discriminant, with representatives chosen
// prime to `drop` (a ramified odd prime dividing the relation norm).
VSpaces v_spaces_disc(i64 disc, i64 drop);
// V-spaces for disc = d p0.
VSpaces v_spaces(i64 d, i64 p0);

// True iff V_Tor and V_Quo meet only in the trivial class.
bool is_generic(i64 d, i64 p0);

// <a, b>_disc: Artin symbol of the ideal of norm b in the unramified cyclic quartic
// extension of Q(sqrt disc) through K_{disc/a, a}.
HalfSymbol pairing(i64 disc, const SquareClass& a, const SquareClass& b);

// Entries (i, j) = <quo_i, tor_j>_disc.
F2Matrix pairing_matrix(i64 disc, const VSpaces& v);
F2Matrix pairing_matrix(i64 d, i64 p);
// Pairing matrix of a fundamental discriminant with any admissible choice of representatives.
F2Matrix pairing_matrix_disc(i64 disc);

struct GoverningContext {
    i64 d = 0, p0 = 0, disc0 = 0;
    std::vector<SquareClass> basis_tor, basis_quo;
    int m = 0;
    F2Matrix base_matrix;
    std::vector<std::vector<RedeiField>> fields;  // fields[i][j] = L_{quo_i, tor_j}
    bool generic = false;
};

GoverningContext make_governing_context(i64 d, i64 p0);

// p prime, p not dividing 2 d p0, and p p0 a square mod 8|d|.
bool transport_admissible(const GoverningContext& ctx, i64 p);
// Primes p < N admissible for the context, ascending (includes p0).
std::vector<i64> governed_primes(const GoverningContext& ctx, i64 N);

// base_matrix + [L_{a_i,b_j}/K_{a_i,b_j}, c] with c = p p0; refuses non-generic contexts.
F2Matrix correction_matrix(const GoverningContext& ctx, i64 p);
F2Matrix transport_matrix(const GoverningContext& ctx, i64 p);
int predict_8rank(const GoverningContext& ctx, i64 p);

}  // namespace govlab
