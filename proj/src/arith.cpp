#include "govlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>

namespace govlab {

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

int v2(u64 n) { return n == 0 ? 64 : __builtin_ctzll(n); }

int kronecker(i64 a, i64 n) {
    if (n == 0) throw std::invalid_argument("kronecker: n = 0");
    int t = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) t = -t;
    }
    int e = v2(static_cast<u64>(n));
    n >>= e;
    if (e > 0) {
        if (a % 2 == 0) return 0;
        i64 r = mod(a, 8);
        if ((e & 1) && (r == 3 || r == 5)) t = -t;
    }
    // Jacobi symbol (a / n), n odd positive
    i64 x = mod(a, n);
    i64 y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            i64 r = y % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) t = -t;
        x %= y;
    }
    return y == 1 ? t : 0;
}

int legendre(i64 a, i64 p) { return kronecker(a, p); }

i64 sqrt_mod_prime(i64 a, i64 p) {
    u64 P = static_cast<u64>(p);
    u64 A = static_cast<u64>(mod(a, p));
    if (A == 0) return 0;
    if (legendre(static_cast<i64>(A), p) != 1) throw std::domain_error("sqrt_mod_prime: nonresidue");
    if (P % 4 == 3) return static_cast<i64>(powmod(A, (P + 1) / 4, P));
    u64 q = P - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (legendre(static_cast<i64>(z), p) != -1) ++z;
    u64 c = powmod(z, q, P);
    u64 r = powmod(A, (q + 1) / 2, P);
    u64 t = powmod(A, q, P);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, P);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, P);
        r = mulmod(r, b, P);
        c = mulmod(b, b, P);
        t = mulmod(t, c, P);
        m = i;
    }
    return static_cast<i64>(r);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

namespace {

constexpr i64 kTrialBound = 1000000;

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<i64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(static_cast<i64>(n));
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n == 0) throw std::invalid_argument("factorize: 0");
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    std::vector<i64> ps;
    for (i64 p : primes_below(kTrialBound)) {
        u64 P = static_cast<u64>(p);
        if (P * P > m) break;
        while (m % P == 0) {
            ps.push_back(p);
            m /= P;
        }
    }
    factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<i64, int>> out;
    for (i64 p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

int valuation(i64 n, i64 p) {
    if (n == 0) return 1000;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

SquarefreePart squarefree_part(i64 n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: 0");
    i64 s = n < 0 ? -1 : 1;
    i64 f = 1;
    for (auto [p, e] : factorize(n)) {
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2) s *= p;
    }
    SquarefreePart out{SquareClass(), f};
    out.s = SquareClass(s);
    return out;
}

bool is_squarefree(i64 n) {
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

SquareClass::SquareClass(i64 n) {
    if (n == 0) throw std::invalid_argument("SquareClass: 0");
    i64 s = n < 0 ? -1 : 1;
    for (auto [p, e] : factorize(n))
        if (e % 2) s *= p;
    v_ = s;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    // Both squarefree: strip the common part.
    i64 g = std::gcd(v_, o.v_);
    SquareClass r;
    r.v_ = (v_ / g) * (o.v_ / g);
    return r;
}

std::string Place::str() const {
    switch (kind) {
        case Kind::Infinity: return "inf";
        case Kind::Two: return "2";
        default: return std::to_string(p);
    }
}

namespace {

int eps(i64 u) { return mod(u, 4) == 3 ? 1 : 0; }
int omega(i64 u) {
    i64 r = mod(u, 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const SquareClass& A, const SquareClass& B, const Place& v) {
    i64 a = A.value(), b = B.value();
    if (v.kind == Place::Kind::Infinity) return (a < 0 && b < 0) ? -1 : 1;
    i64 p = v.kind == Place::Kind::Two ? 2 : v.p;
    int al = a % p == 0 ? 1 : 0;
    int be = b % p == 0 ? 1 : 0;
    i64 u = al ? a / p : a;
    i64 w = be ? b / p : b;
    if (p == 2) {
        int e = eps(u) * eps(w) + al * omega(w) + be * omega(u);
        return (e & 1) ? -1 : 1;
    }
    int s = 1;
    if (al && be && eps(p)) s = -s;
    if (be) s *= legendre(u, p);
    if (al) s *= legendre(w, p);
    return s;
}

std::vector<Place> relevant_places(const std::vector<SquareClass>& classes) {
    std::vector<i64> ps;
    for (const auto& c : classes)
        for (i64 p : prime_divisors(c.value()))
            if (p != 2) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<Place> out;
    for (i64 p : ps) out.push_back(Place::odd(p));
    out.push_back(Place::two());
    out.push_back(Place::infinity());
    return out;
}

bool hilbert_trivial_everywhere(const SquareClass& a, const SquareClass& b, Place* bad) {
    for (const Place& v : relevant_places({a, b})) {
        if (hilbert(a, b, v) == -1) {
            if (bad) *bad = v;
            return false;
        }
    }
    return true;
}

const std::vector<i64>& primes_below(i64 bound) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<const std::vector<i64>>> gens;
    static std::vector<i64> limits;
    std::lock_guard<std::mutex> lock(mu);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (limits[i] >= bound) return *gens[i];
    i64 lim = std::max<i64>(bound, limits.empty() ? 1024 : 2 * limits.back());
    std::vector<char> comp(static_cast<std::size_t>(lim), 0);
    auto ps = std::make_unique<std::vector<i64>>();
    for (i64 i = 2; i < lim; ++i) {
        if (comp[i]) continue;
        ps->push_back(i);
        for (i64 j = i * i; j < lim; j += i) comp[j] = 1;
    }
    gens.push_back(std::move(ps));
    limits.push_back(lim);
    return *gens.back();
}

std::vector<i64> prime_family(i64 N, i64 modulus, const std::vector<i64>& residues) {
    std::vector<i64> out;
    if (residues.empty() || N <= 2) return out;
    std::vector<char> want(static_cast<std::size_t>(modulus), 0);
    for (i64 r : residues) want[mod(r, modulus)] = 1;
    for (i64 p : primes_below(N)) {
        if (p >= N) break;
        if (want[p % modulus]) out.push_back(p);
    }
    return out;
}

bool is_fundamental(i64 disc) {
    if (disc == 0 || disc == 1) return false;
    i64 r = mod(disc, 4);
    if (r == 1) return is_squarefree(disc);
    if (r != 0) return false;
    i64 k = disc / 4;
    i64 rk = mod(k, 4);
    return (rk == 2 || rk == 3) && is_squarefree(k);
}

i64 mod_big(const BigInt& x, i64 m) {
    BigInt r = x % m;
    i64 v = static_cast<i64>(r);
    return v < 0 ? v + m : v;
}

u64 low64(const BigInt& x) {
    static const BigInt two64 = BigInt(1) << 64;
    BigInt r = x % two64;
    if (r < 0) r += two64;
    return static_cast<u64>(r);
}

bool fits_i64(const BigInt& x) {
    static const BigInt lo = std::numeric_limits<i64>::min();
    static const BigInt hi = std::numeric_limits<i64>::max();
    return x >= lo && x <= hi;
}

}  // namespace govlab
