#include "govlab/selmer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace govlab {

namespace {

using i128 = __int128;

void require(bool ok, const std::string& why) {
    if (!ok) throw HypothesisViolation(why);
}


bool is_square128(i128 n) {
    if (n < 0) return false;
    if (n < 2) return true;
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

// Local square classes as bit vectors: bits() = 1 at infinity, 2 at odd p, 3 at 2.
int local_bits(i64 v) { return v == 0 ? 1 : (v == 2 ? 3 : 2); }

std::uint64_t local_class(i128 n, i64 v) {
    if (v == 0) return n < 0 ? 1 : 0;
    int val = 0;
    while (n % v == 0) {
        n /= v;
        ++val;
    }
    std::uint64_t c = val & 1;
    if (v == 2) {
        i64 u = static_cast<i64>(((n % 8) + 8) % 8);
        if (u % 4 == 3) c |= 2;            // -1
        if (u == 3 || u == 5) c |= 4;      // 5
    } else {
        i64 u = static_cast<i64>(((n % v) + v) % v);
        if (legendre(u, v) == -1) c |= 2;
    }
    return c;
}

struct LocalImage {
    i64 v;
    int k;
    std::vector<std::uint64_t> basis;  // in F_2^{2k}: a1 bits | a2 bits << k
};

std::uint64_t pair_bits(std::uint64_t c1, std::uint64_t c2, int k) { return c1 | (c2 << k); }

// Image of E^(d)(Q_v)/2 in (Q_v^*/Q_v^*2)^2 for roots R, via torsion plus sampled points.
LocalImage local_image(const std::array<i64, 3>& R, i64 v) {
    LocalImage L{v, local_bits(v), {}};
    const int target = v == 0 ? 1 : (v == 2 ? 3 : 2);
    auto add = [&](std::uint64_t w) {
        if (static_cast<int>(L.basis.size()) >= target) return;
        auto t = L.basis;
        t.push_back(w);
        if (f2_rank(t) > static_cast<int>(L.basis.size())) L.basis.push_back(w);
    };
    auto cls = [&](i128 n) { return local_class(n, v); };
    // torsion
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, l = (i + 2) % 3;
        std::array<std::uint64_t, 3> c{};
        c[j] = cls(static_cast<i128>(R[i]) - R[j]);
        c[l] = cls(static_cast<i128>(R[i]) - R[l]);
        c[i] = c[j] ^ c[l];
        add(pair_bits(c[0], c[1], L.k));
    }
    if (v == 0) {
        require(static_cast<int>(L.basis.size()) == target, "real image incomplete");
        return L;
    }
    // x = t / v^(2e)
    for (i64 T = 16; static_cast<int>(L.basis.size()) < target; T *= 4) {
        require(T < (i64{1} << 24), "local image search exhausted at " + std::to_string(v));
        i128 scale = 1;
        for (int e = 0; e < 4 && static_cast<int>(L.basis.size()) < target; ++e) {
            if (e > 0) {
                if (scale > static_cast<i128>(1e17) / v / v) break;
                scale *= static_cast<i128>(v) * v;
            }
            for (i64 t = -T; t <= T && static_cast<int>(L.basis.size()) < target; ++t) {
                std::array<i128, 3> f;
                bool zero = false;
                for (int i = 0; i < 3; ++i) {
                    f[i] = static_cast<i128>(t) - static_cast<i128>(R[i]) * scale;
                    zero |= f[i] == 0;
                }
                if (zero) continue;
                std::array<std::uint64_t, 3> c{cls(f[0]), cls(f[1]), cls(f[2])};
                if ((c[0] ^ c[1] ^ c[2]) != 0) continue;  // f(x) not a square
                add(pair_bits(c[0], c[1], L.k));
            }
        }
    }
    return L;
}

std::array<i64, 3> twisted_roots(const CurveData& E, i64 d) {
    return {E.roots[0] * d, E.roots[1] * d, E.roots[2] * d};
}

// Generators -1, then primes, for vectors over square classes.
struct ClassBasis {
    std::vector<i64> gens;

    explicit ClassBasis(const std::set<i64>& primes) {
        gens.push_back(-1);
        gens.insert(gens.end(), primes.begin(), primes.end());
    }
    int size() const { return static_cast<int>(gens.size()); }
    std::uint64_t vec(const SquareClass& s) const {
        std::uint64_t r = 0;
        i64 v = s.value();
        if (v < 0) r |= 1;
        for (int i = 1; i < size(); ++i)
            if (v % gens[i] == 0) r |= std::uint64_t{1} << i;
        return r;
    }
    SquareClass cls(std::uint64_t r) const {
        SquareClass s(1);
        for (int i = 0; i < size(); ++i)
            if ((r >> i) & 1) s = s * SquareClass(gens[i]);
        return s;
    }
    std::uint64_t vec(const SelmerElement& F) const { return vec(F.a1) | (vec(F.a2) << size()); }
    SelmerElement elem(std::uint64_t r) const {
        std::uint64_t mask = (std::uint64_t{1} << size()) - 1;
        return {cls(r & mask), cls(r >> size())};
    }
};

std::set<i64> bad_primes(const CurveData& E, i64 d) {
    std::set<i64> S = E.conductor_support;
    for (i64 q : prime_divisors(d < 0 ? -d : d)) S.insert(q);
    return S;
}

i64 isqrt_exact(i64 n) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

CurveData CurveData::make(i64 e1, i64 e2, i64 e3) {
    if (e1 == e2 || e1 == e3 || e2 == e3) throw std::invalid_argument("curve roots must be distinct");
    CurveData E;
    E.roots = {e1, e2, e3};
    E.conductor_support.insert(2);
    for (i64 t : {e1 - e2, e1 - e3, e2 - e3})
        for (i64 q : prime_divisors(t < 0 ? -t : t)) E.conductor_support.insert(q);
    for (int i = 0; i < 3; ++i) {
        i64 n = (E.roots[i] - E.roots[(i + 1) % 3]) * (E.roots[i] - E.roots[(i + 2) % 3]);
        if (n > 0 && isqrt_exact(n) * isqrt_exact(n) == n) E.cyclic_four = true;
    }
    return E;
}

std::string CurveData::str() const {
    std::ostringstream os;
    os << "y^2 = (x - " << roots[0] << ")(x - " << roots[1] << ")(x - " << roots[2] << ")";
    return os.str();
}

std::array<SelmerElement, 3> torsion_images(const CurveData& E, i64 d) {
    auto R = twisted_roots(E, d);
    std::array<SelmerElement, 3> out;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, l = (i + 2) % 3;
        std::array<SquareClass, 3> c;
        c[j] = squarefree_part(R[i] - R[j]).s;
        c[l] = squarefree_part(R[i] - R[l]).s;
        c[i] = c[j] * c[l];
        out[i] = {c[0], c[1]};
    }
    return out;
}

std::vector<SelmerElement> two_selmer(const CurveData& E, i64 d) {
    require(d != 0 && is_squarefree(d), "twist must be squarefree");
    auto R = twisted_roots(E, d);
    auto S = bad_primes(E, d);
    ClassBasis B(S);
    const int n = B.size();
    require(2 * n <= 64, "too many bad primes");
    std::vector<std::uint64_t> rows;
    std::vector<i64> places{0};
    places.insert(places.end(), S.begin(), S.end());
    for (i64 v : places) {
        LocalImage L = local_image(R, v);
        auto perp = f2_kernel(L.basis, 2 * L.k);
        // local class of each generator
        std::vector<std::uint64_t> g(n);
        for (int i = 0; i < n; ++i) g[i] = local_class(B.gens[i], v);
        for (auto lam : perp) {
            std::uint64_t row = 0;
            for (int i = 0; i < n; ++i) {
                if (__builtin_popcountll(lam & pair_bits(g[i], 0, L.k)) & 1) row |= std::uint64_t{1} << i;
                if (__builtin_popcountll(lam & pair_bits(0, g[i], L.k)) & 1) row |= std::uint64_t{1} << (n + i);
            }
            rows.push_back(row);
        }
    }
    std::vector<SelmerElement> out;
    for (auto v : f2_kernel(rows, 2 * n)) out.push_back(B.elem(v));
    return out;
}

int selmer_dim(const CurveData& E, i64 d) { return static_cast<int>(two_selmer(E, d).size()); }

std::vector<SelmerElement> w_sd(const CurveData& E, i64 p0) {
    require(p0 > 2 && is_prime(p0) && !E.conductor_support.count(p0), "p0 must be an odd prime of good reduction");
    auto T = torsion_images(E, p0);
    ClassBasis B(E.conductor_support);
    std::vector<std::uint64_t> vecs;
    for (auto F : two_selmer(E, p0)) {
        bool r1 = F.a1.value() % p0 == 0, r2 = F.a2.value() % p0 == 0;
        // T[0] has parities (0,1), T[1] (1,0), T[2] (1,1)
        if (r1 && r2)
            F = F + T[2];
        else if (r1)
            F = F + T[1];
        else if (r2)
            F = F + T[0];
        require(F.a1.value() % p0 != 0 && F.a2.value() % p0 != 0, "torsion correction failed");
        vecs.push_back(B.vec(F));
    }
    std::vector<SelmerElement> out;
    for (auto v : f2_basis(vecs))
        if (v) out.push_back(B.elem(v));
    return out;
}

bool is_generic_twist(const CurveData& E, i64 p0) {
    auto W = w_sd(E, p0);
    ClassBasis B(E.conductor_support);
    std::vector<std::uint64_t> p1, p2;
    for (auto& F : W) {
        p1.push_back(B.vec(F.a1));
        p2.push_back(B.vec(F.a2));
    }
    const int m = static_cast<int>(W.size());
    if (f2_rank(p1) != m || f2_rank(p2) != m) return false;
    auto both = p1;
    both.insert(both.end(), p2.begin(), p2.end());
    return f2_rank(both) == 2 * m;
}

int point_search_rank(const CurveData& E, i64 d, i64 height_bound) {
    require(height_bound >= 1, "height bound must be positive");
    auto R = twisted_roots(E, d);
    auto S = bad_primes(E, d);
    ClassBasis B(S);
    auto sel = two_selmer(E, d);
    auto tors = torsion_images(E, d);
    std::vector<std::uint64_t> tvec;
    for (auto& t : tors) tvec.push_back(B.vec(t));
    const int tdim = f2_rank(tvec);
    std::vector<std::uint64_t> found = tvec;

    // enumerate Selmer elements outside the span of torsion and points found so far
    std::vector<std::uint64_t> svec;
    for (auto& F : sel) svec.push_back(B.vec(F));
    const int s = static_cast<int>(svec.size());
    const i128 d21 = static_cast<i128>(R[1]) - R[0], d31 = static_cast<i128>(R[2]) - R[0];
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
        std::uint64_t v = 0;
        for (int i = 0; i < s; ++i)
            if ((mask >> i) & 1) v ^= svec[i];
        if (f2_in_span(f2_basis(found), v)) continue;
        SelmerElement F = B.elem(v);
        const i128 a1 = F.a1.value(), a2 = F.a2.value(), a3 = F.a3().value();
        bool hit = false;
        // a1 U^2 - a2 V^2 = d21 T^2, a1 U^2 - a3 W^2 = d31 T^2
        for (i64 T = 1; T <= height_bound && !hit; ++T) {
            const i128 T2 = static_cast<i128>(T) * T;
            for (i64 U = 1; U <= height_bound && !hit; ++U) {
                if (std::gcd(U, T) != 1) continue;
                const i128 A = a1 * U * U;
                i128 v2 = A - d21 * T2, w2 = A - d31 * T2;
                if (v2 % a2 != 0 || w2 % a3 != 0) continue;
                v2 /= a2;
                w2 /= a3;
                if (v2 <= 0 || w2 <= 0) continue;
                if (is_square128(v2) && is_square128(w2)) hit = true;
            }
        }
        if (hit) found.push_back(v);
    }
    return f2_rank(found) - tdim;
}

}  // namespace govlab

namespace govlab {

int qadic_alpha_class(const ConicSolution& sol, i64 s, i64 q) {
    const i64 a = sol.a.value();
    i64 X = mod_big(sol.x, q), Y = mod_big(sol.y, q);
    i64 r = static_cast<i64>((static_cast<__int128>(X) + static_cast<__int128>(Y) * s) % q);
    if (r != 0) return legendre(r, q) == -1;
    // lift s to a q-adic root of a with enough precision to see the valuation
    int K = 3;
    for (BigInt z = abs(sol.z); z != 0 && z % q == 0; z /= q) K += 2;
    for (BigInt y = abs(sol.y); y != 0 && y % q == 0; y /= q) ++K;
    BigInt Q = q, S = s, qk = q;
    const i64 inv2s = powmod(mod(2 * s, q), q - 2, q);
    for (int j = 1; j < K; ++j) {
        BigInt f = (S * S - a) / qk;
        i64 t = mod(-mod_big(f, q) * inv2s, q);
        S += BigInt(t) * qk;
        qk *= Q;
    }
    BigInt v = (sol.x + sol.y * S) % qk;
    if (v < 0) v += qk;
    require(v != 0, "x + y sqrt a vanishes to working precision at " + std::to_string(q));
    int val = 0;
    while (v % Q == 0) {
        v /= Q;
        ++val;
    }
    require(val % 2 == 0, "x + y sqrt a has odd valuation at " + std::to_string(q));
    return legendre(mod_big(v, q), q) == -1;
}

GoverningTriple selmer_governing_field(const SelmerElement& F, const SelmerElement& G, const std::set<i64>& support) {
    const std::array<SquareClass, 3> a{F.a1, F.a2, F.a3()}, ap{G.a1, G.a2, G.a3()};
    auto works = [&](const SquareClass& b) {
        for (int k = 0; k < 3; ++k)
            if (!a[k].is_one() && !hilbert_trivial_everywhere(a[k], b * ap[k])) return false;
        return true;
    };
    ClassBasis B(support);
    const int n = B.size();
    std::vector<SquareClass> cands;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) cands.push_back(B.cls(r));
    std::stable_sort(cands.begin(), cands.end(), [](const SquareClass& x, const SquareClass& y) {
        i64 ax = x.value() < 0 ? -x.value() : x.value(), ay = y.value() < 0 ? -y.value() : y.value();
        return ax != ay ? ax < ay : x.value() > y.value();
    });
    GoverningTriple L{F, G, SquareClass(1), {}, 0};
    bool found = false;
    for (auto& b : cands)
        if (works(b)) {
            L.b = b;
            found = true;
            break;
        }
    for (i64 ell : primes_below(100000)) {
        if (found) break;
        if (ell == 2 || support.count(ell)) continue;
        for (auto& b0 : cands) {
            SquareClass b = b0 * SquareClass(ell);
            if (works(b)) {
                L.b = b;
                L.extra_prime = ell;
                found = true;
                break;
            }
        }
    }
    if (!found) throw LocalObstruction(Place::infinity());
    for (int k = 0; k < 3; ++k) L.conics[k] = solve_conic(a[k], L.b * ap[k]);
    return L;
}

HalfSymbol triple_symbol(const GoverningTriple& L, i64 q, i64 s1, i64 s2) {
    require(q > 2 && (L.extra_prime == 0 || q != L.extra_prime), "prime ramifies in the governing field");
    const i64 a1 = L.F.a1.value(), a2 = L.F.a2.value();
    const i64 g = std::gcd(a1 < 0 ? -a1 : a1, a2 < 0 ? -a2 : a2);
    require(g % q != 0 && L.b.value() % q != 0, "prime divides the governing data");
    const i64 s3 = static_cast<i64>(static_cast<__int128>(mulmod(mod(s1, q), mod(s2, q), q)) *
                                    powmod(mod(g, q), q - 2, q) % q);
    const std::array<i64, 3> s{mod(s1, q), mod(s2, q), s3};
    int sum = 0;
    for (int k = 0; k < 3; ++k) sum ^= qadic_alpha_class(L.conics[k], s[k], q);
    return {sum};
}

HalfSymbol triple_symbol(const GoverningTriple& L, i64 q) {
    auto root = [&](const SquareClass& c) {
        i64 v = mod(c.value(), q);
        require(v != 0 && legendre(v, q) == 1, "q does not split in K");
        return sqrt_mod_prime(v, q);
    };
    root(L.G.a1);
    root(L.G.a2);
    return triple_symbol(L, q, root(L.F.a1), root(L.F.a2));
}

const char* anchor_name(AnchorTag t) { return t == AnchorTag::ProvenZero ? "ProvenZero" : "Assumed"; }

SelmerContext make_selmer_context(const CurveData& E, i64 p0, i64 height_bound) {
    SelmerContext ctx;
    ctx.curve = E;
    ctx.p0 = p0;
    ctx.wsd_basis = w_sd(E, p0);
    ctx.m = static_cast<int>(ctx.wsd_basis.size());
    ctx.anchor_matrix = F2Matrix(ctx.m, ctx.m);
    ctx.anchor_rank = point_search_rank(E, p0, height_bound);
    ctx.anchor = ctx.anchor_rank == ctx.m ? AnchorTag::ProvenZero : AnchorTag::Assumed;
    ctx.generic = is_generic_twist(E, p0);
    if (ctx.generic)
        for (int i = 0; i < ctx.m; ++i)
            for (int j = i + 1; j < ctx.m; ++j)
                ctx.fields.emplace(std::make_pair(i, j),
                                   selmer_governing_field(ctx.wsd_basis[i], ctx.wsd_basis[j], E.conductor_support));
    return ctx;
}

bool selmer_admissible(const SelmerContext& ctx, i64 p) {
    if (p < 3 || !is_prime(p) || ctx.curve.conductor_support.count(p)) return false;
    if (mod(p, 8) != mod(ctx.p0, 8)) return false;
    for (i64 q : ctx.curve.conductor_support)
        if (q != 2 && legendre(mod(p, q), q) != legendre(mod(ctx.p0, q), q)) return false;
    return true;
}

std::vector<i64> selmer_family(const SelmerContext& ctx, i64 N) {
    std::vector<i64> out;
    for (i64 p : primes_below(N))
        if (p < N && selmer_admissible(ctx, p)) out.push_back(p);
    return out;
}

F2Matrix selmer_correction(const SelmerContext& ctx, i64 p) {
    require(ctx.generic, "transport needs a generic twist");
    require(selmer_admissible(ctx, p), "p p0 is not a square mod 8C");
    F2Matrix C(ctx.m, ctx.m);
    if (p == ctx.p0) return C;
    for (const auto& [ij, L] : ctx.fields) {
        HalfSymbol s = triple_symbol(L, p) + triple_symbol(L, ctx.p0);
        C.set(ij.first, ij.second, s.value);
        C.set(ij.second, ij.first, s.value);
    }
    return C;
}

F2Matrix transport_ct_matrix(const SelmerContext& ctx, i64 p) {
    F2Matrix M = ctx.anchor_matrix + selmer_correction(ctx, p);
    if (!M.is_alternating()) throw std::logic_error("transported Cassels-Tate matrix is not alternating");
    return M;
}

int predict_4selmer(const SelmerContext& ctx, i64 p) { return transport_ct_matrix(ctx, p).corank(); }

}  // namespace govlab
