#include "govlab/conic.hpp"

#include <cmath>
#include <numeric>

#include "govlab/twoadic.hpp"

namespace govlab {

namespace {

constexpr i64 kBruteBound = 50;

BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

bool ramified_at_two(i64 t) { return mod(t, 4) != 1; }

// t with t^2 = a mod |b|, |t| <= |b|/2; b squarefree.
bool sqrt_mod_squarefree(i64 a, i64 b, i64& out) {
    i64 n = std::abs(b);
    i64 t = 0, M = 1;
    for (i64 q : prime_divisors(n)) {
        i64 r;
        if (q == 2) {
            r = mod(a, 2);
        } else if (mod(a, q) == 0) {
            r = 0;
        } else {
            if (legendre(a, q) != 1) return false;
            r = sqrt_mod_prime(a, q);
        }
        // CRT: t = t (mod M), r (mod q)
        i64 inv = static_cast<i64>(powmod(static_cast<u64>(mod(M, q)), static_cast<u64>(q - 2), static_cast<u64>(q)));
        if (q == 2) inv = 1;
        i64 k = static_cast<i64>(mulmod(static_cast<u64>(mod(r - t, q)), static_cast<u64>(inv), static_cast<u64>(q)));
        t += M * k;
        M *= q;
    }
    t = mod(t, n);
    if (t > n / 2) t -= n;
    out = t;
    return true;
}

struct Triple {
    BigInt x, y, z;
};

Triple descend(i64 a, i64 b, int depth) {
    if (depth > 200) throw std::logic_error("conic descent did not terminate");
    if (b == 1) return {1, 0, 1};
    if (a == 1) return {1, 1, 0};
    if (b == -a) return {0, 1, 1};
    if (std::abs(a) > std::abs(b)) {
        Triple r = descend(b, a, depth + 1);
        return {r.x, r.z, r.y};
    }
    if (std::abs(b) == 1) throw LocalObstruction(Place::infinity());  // a = b = -1
    i64 t;
    if (!sqrt_mod_squarefree(a, b, t)) throw std::logic_error("conic descent: a not a square mod b");
    __int128 num = static_cast<__int128>(t) * t - a;
    i64 k = static_cast<i64>(num / b);
    if (k == 0) throw std::logic_error("conic descent: a is a square");
    SquarefreePart kp = squarefree_part(k);
    i64 k0 = kp.s.value();
    Triple r = descend(a, k0, depth + 1);
    BigInt X = r.x * t + BigInt(a) * r.y;
    BigInt Y = r.x + r.y * t;
    BigInt Z = BigInt(k0) * r.z * kp.f;
    return {X, Y, Z};
}

void make_primitive(ConicSolution& s) {
    BigInt g = big_gcd(big_gcd(abs(s.x), abs(s.y)), abs(s.z));
    if (g > 1) {
        s.x /= g;
        s.y /= g;
        s.z /= g;
    }
    if (s.z < 0 || (s.z == 0 && s.y < 0)) {
        s.x = -s.x;
        s.y = -s.y;
        s.z = -s.z;
    }
}

void check_local(const SquareClass& a, const SquareClass& b) {
    Place bad;
    if (!hilbert_trivial_everywhere(a, b, &bad)) throw LocalObstruction(bad);
}

bool isqrt_exact(i64 n, i64& r) {
    if (n < 0) return false;
    i64 s = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    r = s;
    return s * s == n;
}

// Visit primitive solutions with 1 <= z, 0 <= y, x >= 0 in (z, y) order.
template <class F>
bool brute_force(const SquareClass& a, const SquareClass& b, F&& visit) {
    i64 A = a.value(), B = b.value();
    for (i64 z = 1; z <= kBruteBound; ++z) {
        for (i64 y = 0; y <= kBruteBound; ++y) {
            __int128 rhs = static_cast<__int128>(A) * y * y + static_cast<__int128>(B) * z * z;
            if (rhs < 0 || rhs > (static_cast<__int128>(1) << 62)) continue;
            i64 x;
            if (!isqrt_exact(static_cast<i64>(rhs), x)) continue;
            if (std::gcd(std::gcd(x, y), z) != 1) continue;
            ConicSolution s{a, b, x, y, z};
            if (visit(s)) return true;
        }
    }
    return false;
}

bool try_twists(const ConicSolution& s, ConicSolution& out) {
    for (i64 r : {1, -1, 2, -2}) {
        ConicSolution t{s.a, s.b, s.x * r, s.y * r, s.z * r};
        if (is_unramified_outside(t)) {
            out = t;
            return true;
        }
    }
    return false;
}

}  // namespace

bool ConicSolution::is_primitive() const { return big_gcd(big_gcd(abs(x), abs(y)), abs(z)) == 1; }

ConicSolution solve_conic_descent(const SquareClass& a, const SquareClass& b) {
    check_local(a, b);
    Triple t = descend(a.value(), b.value(), 0);
    ConicSolution s{a, b, t.x, t.y, t.z};
    make_primitive(s);
    if (!s.satisfies()) throw std::logic_error("conic descent produced a non-solution");
    return s;
}

ConicSolution solve_conic(const SquareClass& a, const SquareClass& b) {
    check_local(a, b);
    ConicSolution found;
    if (brute_force(a, b, [&](const ConicSolution& s) {
            found = s;
            return true;
        }))
        return found;
    return solve_conic_descent(a, b);
}

bool is_unramified_outside(const ConicSolution& sol) {
    i64 a = sol.a.value(), b = sol.b.value();
    BigInt g = big_gcd(abs(sol.x), abs(sol.y));
    if (g > 1) {
        if (!fits_i64(g)) throw std::overflow_error("is_unramified_outside: gcd too large to factor");
        for (auto [q, e] : factorize(static_cast<i64>(g))) {
            if (q == 2 || a % q == 0 || b % q == 0) continue;
            if (e % 2) return false;
        }
    }
    bool ra = ramified_at_two(a), rb = ramified_at_two(b);
    if (ra && rb) return true;
    if (!rb) return twoadic_unramified(a, sol.x, sol.y);
    return twoadic_unramified(b, 2 * sol.x, 2 * sol.z);
}

ConicSolution normalize_for_redei(const ConicSolution& sol) {
    if (!sol.satisfies()) throw std::invalid_argument("normalize_for_redei: not a solution");
    if (is_unramified_outside(sol)) return sol;
    ConicSolution p = sol;
    make_primitive(p);
    ConicSolution out;
    if (try_twists(p, out)) return out;
    throw NormalizationFailed("no twist in {1,-1,2,-2} normalizes the solution");
}

ConicSolution canonical_solution(const SquareClass& a, const SquareClass& b) {
    check_local(a, b);
    ConicSolution out;
    if (brute_force(a, b, [&](const ConicSolution& s) { return try_twists(s, out); })) return out;
    ConicSolution d = solve_conic_descent(a, b);
    if (try_twists(d, out)) return out;
    throw NormalizationFailed("no normalizable solution found for (" + std::to_string(a.value()) + ", " +
                              std::to_string(b.value()) + ")");
}

}  // namespace govlab
