#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace govlab {

using BigInt = boost::multiprecision::cpp_int;
using i64 = std::int64_t;
using u64 = std::uint64_t;

struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& why) : std::runtime_error(why) {}
};

struct NotFundamental : std::invalid_argument {
    explicit NotFundamental(i64 disc)
        : std::invalid_argument("not a negative fundamental discriminant: " + std::to_string(disc)) {}
};

// Element of Q*/Q*^2, stored as its signed squarefree representative.
class SquareClass {
public:
    SquareClass() = default;
    // n must be nonzero; square factors are stripped.
    explicit SquareClass(i64 n);

    i64 value() const { return v_; }
    bool is_one() const { return v_ == 1; }
    bool operator==(const SquareClass&) const = default;
    bool operator<(const SquareClass& o) const { return v_ < o.v_; }

    SquareClass operator*(const SquareClass& o) const;

private:
    i64 v_ = 1;
};

struct Place {
    enum class Kind { Infinity, Two, OddPrime };
    Kind kind = Kind::Infinity;
    i64 p = 0;  // only meaningful for OddPrime

    static Place infinity() { return {Kind::Infinity, 0}; }
    static Place two() { return {Kind::Two, 2}; }
    static Place odd(i64 p) { return {Kind::OddPrime, p}; }
    // 2 -> Two, odd p -> OddPrime(p)
    static Place prime(i64 p) { return p == 2 ? two() : odd(p); }

    bool operator==(const Place&) const = default;
    std::string str() const;
};

// Number-theoretic helpers on machine integers.
i64 mod(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
i64 gcd(i64 a, i64 b);
int v2(u64 n);

int kronecker(i64 a, i64 n);
// Legendre symbol for an odd prime p (0 when p | a).
int legendre(i64 a, i64 p);
// Square root of a modulo an odd prime p; a must be a square mod p.
i64 sqrt_mod_prime(i64 a, i64 p);

bool is_prime(u64 n);
// Prime factorization, ascending primes with exponents; sign and unit ignored.
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
int valuation(i64 n, i64 p);

struct SquarefreePart {
    SquareClass s;
    i64 f;
};
SquarefreePart squarefree_part(i64 n);
bool is_squarefree(i64 n);

int hilbert(const SquareClass& a, const SquareClass& b, const Place& v);
// Places dividing 2ab together with infinity, ordered odd primes ascending, then Two, then Infinity.
std::vector<Place> relevant_places(const std::vector<SquareClass>& classes);
// First place where (a,b)_v = -1, if any.
bool hilbert_trivial_everywhere(const SquareClass& a, const SquareClass& b, Place* bad = nullptr);

// Shared read-only sieve of primes below the given bound (grown on demand, thread-safe).
const std::vector<i64>& primes_below(i64 bound);
std::vector<i64> prime_family(i64 N, i64 modulus, const std::vector<i64>& residues);

bool is_fundamental(i64 disc);

// Conversions for big integers.
i64 mod_big(const BigInt& x, i64 m);
u64 low64(const BigInt& x);  // x mod 2^64 as two's complement residue
bool fits_i64(const BigInt& x);

}  // namespace govlab
