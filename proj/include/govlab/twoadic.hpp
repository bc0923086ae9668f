#pragma once

#include "govlab/arith.hpp"

namespace govlab {

// Local tests at the primes above 2 of E = Q(sqrt t), t squarefree != 1,
// for gamma = u + v sqrt t (nonzero).

// True iff E(sqrt gamma)/E is unramified at every prime of E above 2.
bool twoadic_unramified(i64 t, const BigInt& u, const BigInt& v);

// True iff gamma is a square in the completion of E at a prime above 2.
// When 2 splits, `branch` selects the embedding sqrt t -> +s or -s.
bool twoadic_is_square(i64 t, const BigInt& u, const BigInt& v, int branch = 0);

// 2-adic square root of t = 1 mod 8, with s = 1 mod 4, correct modulo 2^62.
u64 twoadic_sqrt(i64 t);

}  // namespace govlab
