#pragma once

#include <stdexcept>

#include "govlab/arith.hpp"

namespace govlab {

struct LocalObstruction : std::runtime_error {
    Place place;
    explicit LocalObstruction(const Place& v)
        : std::runtime_error("conic has no point over Q_" + v.str()), place(v) {}
};

struct NormalizationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x^2 - a y^2 = b z^2
struct ConicSolution {
    SquareClass a, b;
    BigInt x, y, z;

    bool satisfies() const { return x * x - BigInt(a.value()) * y * y == BigInt(b.value()) * z * z; }
    bool is_primitive() const;
};

// Primitive solution; brute force over small heights, then Legendre descent.
ConicSolution solve_conic(const SquareClass& a, const SquareClass& b);

// Descent only (no brute force); exposed for testing the fallback path.
ConicSolution solve_conic_descent(const SquareClass& a, const SquareClass& b);

// K(sqrt(x + y sqrt a))/K unramified at every prime of K = Q(sqrt a, sqrt b)
// not ramified in both Q(sqrt a) and Q(sqrt b).
bool is_unramified_outside(const ConicSolution& sol);

ConicSolution normalize_for_redei(const ConicSolution& sol);

// Canonical normalized solution: first primitive solution in (|z|, |y|, |x|)
// order that normalizes under one of the twists 1, -1, 2, -2.
ConicSolution canonical_solution(const SquareClass& a, const SquareClass& b);

}  // namespace govlab
