#pragma once

#include <set>
#include <string>

#include "govlab/conic.hpp"

namespace govlab {

// Element of (1/2)Z/Z stored as 0 or 1 (the latter meaning 1/2).
struct HalfSymbol {
    int value = 0;

    HalfSymbol operator+(HalfSymbol o) const { return {value ^ o.value}; }
    HalfSymbol& operator+=(HalfSymbol o) {
        value ^= o.value;
        return *this;
    }
    bool operator==(const HalfSymbol&) const = default;
    bool is_zero() const { return value == 0; }
    std::string str() const { return value ? "1/2" : "0"; }
};

// L_{a,b} = K_{a,b}(sqrt(x + y sqrt a)) with x^2 - a y^2 = b z^2.
struct RedeiField {
    SquareClass a, b;
    ConicSolution sol;
    std::set<i64> conductor_support;
    bool normalized_at_two = true;
};

// Canonical field; raises LocalObstruction when some (a,b)_v = -1. When 2 blocks
// normalization the field is still returned with 2 in its conductor support.
RedeiField build_redei_field(const SquareClass& a, const SquareClass& b);
RedeiField redei_field_from(const ConicSolution& sol);

// Artin symbol at an ideal of norm c; enforces c > 0, c = 1 mod 8, gcd(c, ab) = 1
// and (a,b)_v = (a,c)_v = (b,c)_v = 1.
HalfSymbol artin_symbol(const RedeiField& L, const SquareClass& c);

// Frobenius of a degree-one prime of K_{a,b} above q. For odd q, `s` is the image of
// sqrt a (s^2 = a mod q); it is ignored at q = 2. Raises HypothesisViolation when
// q has no degree-one prime in K, or L/K ramifies there.
HalfSymbol prime_symbol(const RedeiField& L, i64 q, i64 s);
HalfSymbol prime_symbol(const RedeiField& L, i64 q);

// Sum of prime_symbol over the primes dividing n > 0 (an ideal of norm n).
HalfSymbol frobenius_sum(const RedeiField& L, i64 n);

// Complex conjugation at a real place of K_{a,b}; zero when K has no real place.
HalfSymbol real_place_symbol(const RedeiField& L);

// Symbol at an ideal of signed norm n: negative n also picks up the real places.
HalfSymbol ideal_symbol(const RedeiField& L, i64 n);

// Both sides of the reciprocity law; throws HypothesisViolation when invalid.
struct ReciprocitySides {
    HalfSymbol lhs, rhs;
};
ReciprocitySides reciprocity_sides(const SquareClass& a, const SquareClass& b, const SquareClass& c);
bool check_reciprocity(const SquareClass& a, const SquareClass& b, const SquareClass& c);

// Validity of (a, b, c) for the reciprocity law; reason filled when invalid.
bool reciprocity_hypotheses(const SquareClass& a, const SquareClass& b, const SquareClass& c,
                            std::string* reason = nullptr);

// Legendre symbol of x + y s at the prime (q, sqrt a - s), with the conjugate / norm
// fallback when x + y s = 0 mod q.
int alpha_legendre(const ConicSolution& sol, i64 s, i64 q);

}  // namespace govlab
