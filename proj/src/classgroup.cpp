#include "govlab/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace govlab {

namespace {

using i128 = __int128;

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// returns g = gcd(a, b) and u, v with u a + v b = g
i64 ext_gcd(i64 a, i64 b, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i64 q = floor_div(a, b);
        i64 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

u64 form_key(const QuadForm& f) { return (static_cast<u64>(f.a) << 32) ^ static_cast<u64>(f.b + (i64{1} << 31)); }

struct FormIndex {
    std::vector<QuadForm> forms;
    std::unordered_map<u64, int> idx;
    int identity = 0;

    explicit FormIndex(i64 disc) : forms(reduced_forms(disc)) {
        idx.reserve(forms.size() * 2);
        for (std::size_t i = 0; i < forms.size(); ++i) idx[form_key(forms[i])] = static_cast<int>(i);
        identity = idx.at(form_key(identity_form(disc)));
    }
    int of(const QuadForm& f) const { return idx.at(form_key(f)); }
};

QuadForm power(const QuadForm& f, u64 e) {
    QuadForm r = identity_form(f.disc());
    QuadForm b = f;
    while (e) {
        if (e & 1) r = compose(r, b);
        b = compose(b, b);
        e >>= 1;
    }
    return r;
}

int log2_exact(i64 n) {
    int k = 0;
    while ((i64{1} << k) < n) ++k;
    if ((i64{1} << k) != n) throw std::logic_error("group count is not a power of 2");
    return k;
}

}  // namespace

bool QuadForm::is_reduced() const {
    if (a <= 0 || std::abs(b) > a || a > c) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

QuadForm reduce(QuadForm f) {
    const i64 D = f.disc();
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            // b into (-a, a]
            i64 twoa = 2 * f.a;
            i64 k = floor_div(f.a - f.b, twoa);
            f.b += k * twoa;
            f.c = static_cast<i64>((static_cast<i128>(f.b) * f.b - D) / (4 * static_cast<i128>(f.a)));
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        break;
    }
    if ((f.a == f.c) && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm compose(const QuadForm& g1, const QuadForm& g2) {
    const QuadForm& f1 = g1.a <= g2.a ? g1 : g2;
    const QuadForm& f2 = g1.a <= g2.a ? g2 : g1;
    const i64 D = f1.disc();
    i64 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    i64 s = (b1 + b2) / 2;
    i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        i64 u, v;
        d = ext_gcd(a2, a1, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i64 v1 = a1 / d1, v2 = a2 / d1;
    i128 r = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * c2) % v1;
    if (r < 0) r += v1;
    i64 b3 = static_cast<i64>(b2 + 2 * static_cast<i128>(v2) * r);
    i64 a3 = v1 * v2;
    QuadForm out;
    out.a = a3;
    out.b = b3;
    // normalize b into (-a, a] before computing c to keep it small
    i64 twoa = 2 * a3;
    i64 k = floor_div(a3 - b3, twoa);
    out.b = b3 + k * twoa;
    out.c = static_cast<i64>((static_cast<i128>(out.b) * out.b - D) / (4 * static_cast<i128>(a3)));
    return reduce(out);
}

QuadForm identity_form(i64 disc) {
    i64 b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm ideal_form(i64 disc, i64 n) {
    if (n <= 0) throw std::invalid_argument("ideal_form: n must be positive");
    i64 m = 4 * n;
    for (i64 beta = 0; beta < 2 * n + 2; ++beta) {
        if (mod(beta * beta - disc, m) == 0) return reduce({n, beta, (beta * beta - disc) / m});
    }
    throw std::invalid_argument("ideal_form: no ideal of norm " + std::to_string(n));
}

std::vector<QuadForm> reduced_forms(i64 disc) {
    if (disc >= 0 || mod(disc, 4) > 1) throw std::invalid_argument("reduced_forms: bad discriminant");
    std::vector<QuadForm> out;
    const i64 A = static_cast<i64>(std::sqrt(static_cast<double>(-disc) / 3.0)) + 1;
    const i64 par = mod(disc, 2);
    for (i64 b = par; b <= A; b += 2) {
        const i64 N = (b * b - disc) / 4;  // a * c
        for (i64 a = std::max<i64>(b, 1); a * a <= N; ++a) {
            if (N % a) continue;
            i64 c = N / a;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

TwoRanks two_power_ranks(i64 disc) {
    if (!is_fundamental(disc) || disc >= 0) throw NotFundamental(disc);
    FormIndex G(disc);
    const std::size_t h = G.forms.size();
    std::vector<int> sq(h);
    for (std::size_t i = 0; i < h; ++i) sq[i] = G.of(compose(G.forms[i], G.forms[i]));
    i64 c2 = 0, c4 = 0, c8 = 0;
    for (std::size_t i = 0; i < h; ++i) {
        int x2 = sq[i], x4 = sq[x2], x8 = sq[x4];
        c2 += x2 == G.identity;
        c4 += x4 == G.identity;
        c8 += x8 == G.identity;
    }
    TwoRanks r;
    r.two_rank = log2_exact(c2);
    r.four_rank = log2_exact(c4 / c2);
    r.eight_rank = log2_exact(c8 / c4);
    return r;
}

int eight_rank_oracle(i64 disc) { return two_power_ranks(disc).eight_rank; }

ClassGroupStructure class_group(i64 disc) {
    if (disc >= 0 || !is_fundamental(disc)) throw NotFundamental(disc);
    FormIndex G(disc);
    const i64 h = static_cast<i64>(G.forms.size());
    ClassGroupStructure out;
    out.discriminant = disc;
    out.h = h;
    // per prime l | h: r_k = number of invariant factors divisible by l^k
    std::vector<std::pair<i64, std::vector<int>>> sylow;
    std::size_t nfactors = 0;
    for (auto [l, e] : (h > 1 ? factorize(h) : std::vector<std::pair<i64, int>>{})) {
        std::vector<int> pw(static_cast<std::size_t>(h));
        for (i64 i = 0; i < h; ++i) pw[i] = G.of(power(G.forms[i], static_cast<u64>(l)));
        std::vector<int> cur(static_cast<std::size_t>(h));
        std::iota(cur.begin(), cur.end(), 0);
        std::vector<int> r;
        int prev_s = 0;
        i64 lpart = 1;
        for (int k = 0; k < e; ++k) lpart *= l;
        for (;;) {
            for (auto& x : cur) x = pw[x];
            i64 cnt = std::count(cur.begin(), cur.end(), G.identity);
            int s = 0;
            for (i64 c = cnt; c > 1; c /= l) ++s;
            r.push_back(s - prev_s);
            prev_s = s;
            if (cnt == lpart) break;
        }
        nfactors = std::max(nfactors, static_cast<std::size_t>(r[0]));
        sylow.emplace_back(l, r);
    }
    // j-th largest invariant factor has l-exponent #{k : r_k >= j}
    std::vector<i64> d(nfactors, 1);
    for (auto& [l, r] : sylow) {
        for (std::size_t j = 1; j <= nfactors; ++j) {
            for (int rk : r)
                if (rk >= static_cast<int>(j)) d[nfactors - j] *= l;
        }
    }
    out.cyclic_orders = d;
    for (i64 x : d) {
        out.two_rank += x % 2 == 0;
        out.four_rank += x % 4 == 0;
        out.eight_rank += x % 8 == 0;
    }
    return out;
}

std::vector<i64> prime_discriminants(i64 disc) {
    std::vector<i64> out;
    i64 rest = disc;
    for (i64 p : prime_divisors(disc)) {
        if (p == 2) continue;
        i64 ps = (p % 4 == 1) ? p : -p;
        out.push_back(ps);
        rest /= ps;
    }
    if (rest != 1) out.insert(out.begin(), rest);  // -4, 8 or -8
    return out;
}

int genus_character(i64 D, i64 disc, i64 n) {
    i64 D2 = disc / D;
    int s = 1;
    for (auto [q, e] : factorize(n)) {
        i64 use = (D % q == 0) ? D2 : D;
        int k = kronecker(use, q);
        if (e % 2) s *= k;
    }
    return s;
}

RedeiMatrix redei_matrix_4rank(i64 disc) {
    if (disc >= 0 || !is_fundamental(disc)) throw NotFundamental(disc);
    RedeiMatrix R;
    auto pds = prime_discriminants(disc);
    const int t = static_cast<int>(pds.size());
    if (t <= 1) {
        R.entries = F2Matrix(0, 0);
        return R;
    }
    // The principal ideal (sqrt disc) or (sqrt(disc/4)) gives the one relation among
    // ramified primes; drop its largest prime from the torsion basis.
    i64 rel = (mod(disc, 4) == 1) ? disc : disc / 4;
    i64 drop = prime_divisors(rel).back();
    for (i64 p : prime_divisors(disc))
        if (p != drop) R.basis_tor.emplace_back(p);
    for (int i = 0; i + 1 < t; ++i) R.basis_quo.emplace_back(pds[i]);
    R.entries = F2Matrix(t - 1, t - 1);
    for (int i = 0; i + 1 < t; ++i)
        for (int j = 0; j + 1 < t; ++j)
            R.entries.set(i, j, genus_character(pds[i], disc, R.basis_tor[j].value()) == -1);
    return R;
}

}  // namespace govlab
