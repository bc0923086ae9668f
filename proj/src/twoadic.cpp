#include "govlab/twoadic.hpp"

namespace govlab {

namespace {

// Ring Z_2[beta] with beta^2 = tr*beta + nm, elements as coordinate pairs.
struct Order2 {
    i64 tr, nm;
};

// Does (A + B beta) match some w^2 modulo `m` (4 or 8) coordinatewise?
bool is_square_mod(const Order2& o, i64 A, i64 B, i64 m) {
    A = mod(A, m);
    B = mod(B, m);
    for (i64 p = 0; p < 8; ++p) {
        for (i64 q = 0; q < 8; ++q) {
            // (p + q b)^2 = p^2 + q^2 nm + (2pq + q^2 tr) b
            i64 c0 = p * p + q * q * o.nm;
            i64 c1 = 2 * p * q + q * q * o.tr;
            if (mod(c0, m) == A && mod(c1, m) == B) return true;
        }
    }
    return false;
}

int lsb_big(const BigInt& x) { return static_cast<int>(boost::multiprecision::lsb(abs(x))); }

struct LocalUnit {
    bool even_valuation;
    i64 A, B;  // unit coordinates mod 8
    Order2 ring;
};

LocalUnit inert_unit(i64 t, const BigInt& u, const BigInt& v) {
    BigInt A = u - v, B = 2 * v;
    int val = std::min(A == 0 ? 100000 : lsb_big(A), B == 0 ? 100000 : lsb_big(B));
    A >>= val;
    B >>= val;
    return {val % 2 == 0, mod_big(A, 8), mod_big(B, 8), {1, (t - 1) / 4}};
}

LocalUnit ramified_unit(i64 t, const BigInt& u, const BigInt& v) {
    BigInt N = u * u - BigInt(t) * v * v;
    int val = lsb_big(N);
    Order2 ring{0, t};
    if (val % 2) return {false, 0, 0, ring};
    // multiply by conj(pi)^val, divide by 2^val
    BigInt pu = mod(t, 4) == 3 ? BigInt(1) : BigInt(0);
    BigInt pv = -1;
    BigInt A = u, B = v;
    for (int i = 0; i < val; ++i) {
        BigInt nA = A * pu + B * pv * t;
        BigInt nB = A * pv + B * pu;
        A = nA;
        B = nB;
    }
    A >>= val;
    B >>= val;
    return {true, mod_big(A, 8), mod_big(B, 8), ring};
}

struct SplitUnit {
    bool even_valuation;
    u64 unit;
};

SplitUnit split_unit(i64 t, const BigInt& u, const BigInt& v, int branch) {
    u64 s = twoadic_sqrt(t);
    if (branch) s = ~s + 1;
    u64 c = low64(u) + low64(v) * s;
    c &= (u64{1} << 62) - 1;
    if (c == 0) throw std::overflow_error("twoadic: insufficient 2-adic precision");
    int val = v2(c);
    if (val + 3 > 62) throw std::overflow_error("twoadic: insufficient 2-adic precision");
    return {val % 2 == 0, c >> val};
}

}  // namespace

u64 twoadic_sqrt(i64 t) {
    if (mod(t, 8) != 1) throw std::domain_error("twoadic_sqrt: t != 1 mod 8");
    u64 T = static_cast<u64>(t);
    u64 s = 1;
    for (int k = 3; k < 64; ++k) {
        u64 mask = (k + 1 == 64) ? ~u64{0} : ((u64{1} << (k + 1)) - 1);
        if (((s * s - T) & mask) != 0) s += u64{1} << (k - 1);
    }
    if ((s & 3) != 1) s = ~s + 1;
    return s;
}

bool twoadic_unramified(i64 t, const BigInt& u, const BigInt& v) {
    i64 r = mod(t, 8);
    if (r == 1) {
        for (int br = 0; br < 2; ++br) {
            SplitUnit su = split_unit(t, u, v, br);
            if (!su.even_valuation || (su.unit & 3) != 1) return false;
        }
        return true;
    }
    LocalUnit lu = r == 5 ? inert_unit(t, u, v) : ramified_unit(t, u, v);
    return lu.even_valuation && is_square_mod(lu.ring, lu.A, lu.B, 4);
}

bool twoadic_is_square(i64 t, const BigInt& u, const BigInt& v, int branch) {
    i64 r = mod(t, 8);
    if (r == 1) {
        SplitUnit su = split_unit(t, u, v, branch);
        return su.even_valuation && (su.unit & 7) == 1;
    }
    LocalUnit lu = r == 5 ? inert_unit(t, u, v) : ramified_unit(t, u, v);
    return lu.even_valuation && is_square_mod(lu.ring, lu.A, lu.B, 8);
}

}  // namespace govlab
