#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "govlab/conic.hpp"
#include "govlab/gf2.hpp"
#include "govlab/redei.hpp"

namespace govlab {

// y^2 = (x - e1)(x - e2)(x - e3)
struct CurveData {
    std::array<i64, 3> roots{};
    std::set<i64> conductor_support;  // primes dividing 2 (e1-e2)(e1-e3)(e2-e3)
    bool cyclic_four = false;         // some (ei-ej)(ei-ek) is a square: a rational cyclic 4-subgroup

    static CurveData make(i64 e1, i64 e2, i64 e3);
    std::string str() const;
};

// Kummer image (x - e1, x - e2); a3 = a1 a2 up to squares.
struct SelmerElement {
    SquareClass a1, a2;

    SquareClass a3() const { return a1 * a2; }
    bool is_zero() const { return a1.is_one() && a2.is_one(); }
    SelmerElement operator+(const SelmerElement& o) const { return {a1 * o.a1, a2 * o.a2}; }
    bool operator==(const SelmerElement&) const = default;
};

// Images of the three 2-torsion points of E^(d).
std::array<SelmerElement, 3> torsion_images(const CurveData& E, i64 d);

// F_2-basis of Sel^(2)(E^(d)), including the torsion images.
std::vector<SelmerElement> two_selmer(const CurveData& E, i64 d);
int selmer_dim(const CurveData& E, i64 d);

// W_SD(E, p0): Selmer elements of E^(p0) made unramified at p0 by torsion, as a basis.
std::vector<SelmerElement> w_sd(const CurveData& E, i64 p0);

// Both projections of W_SD injective with independent images.
bool is_generic_twist(const CurveData& E, i64 p0);

// Lower bound for rank E^(d)(Q): independent non-torsion points found on the
// 2-coverings with |U|, T <= height_bound.
int point_search_rank(const CurveData& E, i64 d, i64 height_bound);

// L_{F,F'} = K(sqrt(alpha_1 alpha_2 alpha_3)), alpha_k = x_k + y_k sqrt(a_k),
// x_k^2 - a_k y_k^2 = b a'_k z_k^2.
struct GoverningTriple {
    SelmerElement F, G;
    SquareClass b;
    std::array<ConicSolution, 3> conics;
    i64 extra_prime = 0;  // prime of b outside the bad set, 0 if none
};

// b is searched among products of -1 and `support`, then with one extra prime.
GoverningTriple selmer_governing_field(const SelmerElement& F, const SelmerElement& G, const std::set<i64>& support);

// Frobenius at a degree-one prime of K above q (q odd, outside the bad set), with
// sqrt a1 = s1 and sqrt a2 = s2 mod q; sqrt a3 follows.
HalfSymbol triple_symbol(const GoverningTriple& L, i64 q, i64 s1, i64 s2);
HalfSymbol triple_symbol(const GoverningTriple& L, i64 q);

// Square class of x + y S in Q_q (S a q-adic root of a lifting s): 0 square, 1 not.
// Raises HypothesisViolation on odd valuation.
int qadic_alpha_class(const ConicSolution& sol, i64 s, i64 q);

enum class AnchorTag { ProvenZero, Assumed };
const char* anchor_name(AnchorTag t);

struct SelmerContext {
    CurveData curve;
    i64 p0 = 0;
    std::vector<SelmerElement> wsd_basis;
    int m = 0;
    F2Matrix anchor_matrix;
    AnchorTag anchor = AnchorTag::Assumed;
    int anchor_rank = 0;  // point-search rank of E^(p0)
    std::map<std::pair<int, int>, GoverningTriple> fields;  // i < j
    bool generic = false;
};

// Anchor is ProvenZero when point search up to height_bound finds m independent points.
SelmerContext make_selmer_context(const CurveData& E, i64 p0, i64 height_bound = 300);

// p prime, p not dividing 2C, p p0 a square mod 8 rad(C).
bool selmer_admissible(const SelmerContext& ctx, i64 p);
std::vector<i64> selmer_family(const SelmerContext& ctx, i64 N);

F2Matrix selmer_correction(const SelmerContext& ctx, i64 p);
F2Matrix transport_ct_matrix(const SelmerContext& ctx, i64 p);
int predict_4selmer(const SelmerContext& ctx, i64 p);

}  // namespace govlab
