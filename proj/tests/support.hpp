// Shared sampling and brute-force oracles for unit tests and the acceptance run.
#pragma once

#include <random>
#include <tuple>

#include "govlab/arith.hpp"
#include "govlab/redei.hpp"

namespace govlab::testing {

inline i64 random_squarefree(std::mt19937_64& rng, i64 bound) {
    for (;;) {
        i64 v = static_cast<i64>(rng() % static_cast<u64>(2 * bound + 1)) - bound;
        if (v != 0 && v != 1 && is_squarefree(v)) return v;
    }
}

// Random (a, b, c) satisfying the reciprocity hypotheses, c prime.
inline std::tuple<SquareClass, SquareClass, SquareClass> random_triple(std::mt19937_64& rng, i64 ab_bound,
                                                                       i64 c_bound) {
    const auto& ps = primes_below(c_bound);
    std::vector<i64> cands;
    for (i64 p : ps)
        if (p < c_bound && p % 8 == 1) cands.push_back(p);
    for (;;) {
        SquareClass a(random_squarefree(rng, ab_bound)), b(random_squarefree(rng, ab_bound));
        if (a == b || !hilbert_trivial_everywhere(a, b)) continue;
        for (int tries = 0; tries < 200; ++tries) {
            SquareClass c(cands[rng() % cands.size()]);
            if (reciprocity_hypotheses(a, b, c)) return {a, b, c};
        }
    }
}

// Number of roots mod q of t^4 - 2x t^2 + b z^2, the minimal polynomial of sqrt(x + y sqrt a).
inline int quartic_roots(const ConicSolution& s, i64 q) {
    i64 X = mod_big(s.x, q), N = mod_big(BigInt(s.b.value()) * s.z * s.z, q);
    int roots = 0;
    for (i64 t = 0; t < q; ++t) {
        __int128 t2 = static_cast<__int128>(t) * t % q;
        __int128 v = (t2 * t2 - 2 * X * t2 + N) % q;
        if (v == 0) ++roots;
    }
    return roots;
}

}  // namespace govlab::testing
