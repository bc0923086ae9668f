#include "govlab/redei.hpp"

#include <numeric>

#include "govlab/twoadic.hpp"

namespace govlab {

namespace {

bool ramified_at_two(i64 t) { return mod(t, 4) != 1; }

void require(bool ok, const std::string& why) {
    if (!ok) throw HypothesisViolation(why);
}

}  // namespace

RedeiField redei_field_from(const ConicSolution& sol) {
    RedeiField L;
    L.a = sol.a;
    L.b = sol.b;
    L.sol = sol;
    i64 g = std::gcd(sol.a.value(), sol.b.value());
    for (i64 p : prime_divisors(g))
        if (p != 2) L.conductor_support.insert(p);
    i64 a = sol.a.value(), b = sol.b.value();
    L.normalized_at_two = is_unramified_outside(sol);
    if ((ramified_at_two(a) && ramified_at_two(b)) || !L.normalized_at_two) L.conductor_support.insert(2);
    return L;
}

RedeiField build_redei_field(const SquareClass& a, const SquareClass& b) {
    try {
        return redei_field_from(canonical_solution(a, b));
    } catch (const NormalizationFailed&) {
        return redei_field_from(solve_conic(a, b));
    }
}

int alpha_legendre(const ConicSolution& sol, i64 s, i64 q) {
    BigInt x = sol.x, y = sol.y;
    const i64 a = sol.a.value();
    int j = 0;
    while (x % q == 0 && y % q == 0 && (x != 0 || y != 0)) {
        x /= q;
        y /= q;
        ++j;
    }
    if (j % 2 || (j > 0 && a % q == 0))
        throw HypothesisViolation("alpha has odd valuation at " + std::to_string(q));
    i64 X = mod_big(x, q), Y = mod_big(y, q);
    i64 r = static_cast<i64>((static_cast<__int128>(X) + static_cast<__int128>(Y) * s) % q);
    if (r != 0) return legendre(r, q);
    // alpha * conj(alpha) = b z^2 is a local square at degree-one primes above q,
    // so alpha and its conjugate share a square class there.
    i64 r2 = mod(static_cast<i64>((static_cast<__int128>(X) - static_cast<__int128>(Y) * s) % q), q);
    if (r2 == 0) throw HypothesisViolation("both x + ys and x - ys vanish mod " + std::to_string(q));
    return legendre(r2, q);
}

HalfSymbol prime_symbol(const RedeiField& L, i64 q, i64 s) {
    require(!L.conductor_support.count(q), "prime " + std::to_string(q) + " divides the conductor");
    const i64 a = L.a.value(), b = L.b.value();
    if (q == 2) {
        require(L.normalized_at_two, "L/K ramifies above 2");
        for (i64 t : {a, b, (L.a * L.b).value()})
            require(mod(t, 8) != 5, "no degree-one prime above 2");
        bool sq;
        if (mod(b, 8) == 1)
            sq = twoadic_is_square(a, L.sol.x, L.sol.y);
        else if (mod(a, 8) == 1)
            sq = twoadic_is_square(b, 2 * L.sol.x, 2 * L.sol.z);
        else
            throw HypothesisViolation("no degree-one prime above 2");
        return {sq ? 0 : 1};
    }
    require(mod(a, q) == 0 || legendre(a, q) == 1, "a is not a square mod " + std::to_string(q));
    require(mod(b, q) == 0 || legendre(b, q) == 1, "b is not a square mod " + std::to_string(q));
    if (mod(a, q) == 0) s = 0;
    return {alpha_legendre(L.sol, s, q) == -1 ? 1 : 0};
}

HalfSymbol prime_symbol(const RedeiField& L, i64 q) {
    if (q == 2) return prime_symbol(L, q, 0);
    i64 a = L.a.value();
    i64 s = 0;
    if (mod(a, q) != 0) {
        require(legendre(a, q) == 1, "a is not a square mod " + std::to_string(q));
        s = sqrt_mod_prime(a, q);
    }
    return prime_symbol(L, q, s);
}

HalfSymbol frobenius_sum(const RedeiField& L, i64 n) {
    require(n > 0, "ideal norm must be positive");
    HalfSymbol out;
    if (n == 1) return out;
    for (auto [q, e] : factorize(n))
        if (e % 2) out += prime_symbol(L, q);
    return out;
}

HalfSymbol real_place_symbol(const RedeiField& L) {
    // K_{a,b} has real places only when a, b > 0; there x + y sqrt a has the sign of x.
    if (L.a.value() < 0 || L.b.value() < 0) return {};
    return {L.sol.x < 0 ? 1 : 0};
}

HalfSymbol ideal_symbol(const RedeiField& L, i64 n) {
    require(n != 0, "ideal norm must be nonzero");
    HalfSymbol out = frobenius_sum(L, n < 0 ? -n : n);
    if (n < 0) out += real_place_symbol(L);
    return out;
}

HalfSymbol artin_symbol(const RedeiField& L, const SquareClass& c) {
    const i64 cv = c.value();
    require(cv > 0, "c must be positive");
    require(mod(cv, 8) == 1, "c must be 1 mod 8");
    require(std::gcd(cv, L.a.value()) == 1 && std::gcd(cv, L.b.value()) == 1, "c must be coprime to ab");
    require(hilbert_trivial_everywhere(L.a, L.b), "(a,b)_v != 1");
    require(hilbert_trivial_everywhere(L.a, c), "(a,c)_v != 1");
    require(hilbert_trivial_everywhere(L.b, c), "(b,c)_v != 1");
    return frobenius_sum(L, cv);
}

bool reciprocity_hypotheses(const SquareClass& a, const SquareClass& b, const SquareClass& c, std::string* reason) {
    auto fail = [&](const char* why) {
        if (reason) *reason = why;
        return false;
    };
    if (a.is_one() || b.is_one() || c.is_one() || a == b) return fail("degenerate square classes");
    if (c.value() <= 0) return fail("c must be positive");
    if (mod(c.value(), 8) != 1) return fail("c must be 1 mod 8");
    if (std::gcd(c.value(), a.value()) != 1 || std::gcd(c.value(), b.value()) != 1)
        return fail("c must be coprime to ab");
    if (!hilbert_trivial_everywhere(a, b)) return fail("(a,b)_v != 1");
    if (!hilbert_trivial_everywhere(a, c)) return fail("(a,c)_v != 1");
    if (!hilbert_trivial_everywhere(b, c)) return fail("(b,c)_v != 1");
    return true;
}

ReciprocitySides reciprocity_sides(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
    std::string why;
    require(reciprocity_hypotheses(a, b, c, &why), why);
    RedeiField Lab = build_redei_field(a, b);
    RedeiField Lac = build_redei_field(a, c);
    return {artin_symbol(Lab, c), ideal_symbol(Lac, b.value())};
}

bool check_reciprocity(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
    auto s = reciprocity_sides(a, b, c);
    return s.lhs == s.rhs;
}

}  // namespace govlab
