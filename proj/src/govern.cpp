#include "govlab/govern.hpp"

#include <algorithm>
#include <numeric>

namespace govlab {

namespace {

void require(bool ok, const std::string& why) {
    if (!ok) throw HypothesisViolation(why);
}

i64 relation_norm(i64 disc) { return squarefree_part(mod(disc, 4) == 1 ? -disc : -disc / 4).s.value(); }

// First `count` primes represented properly by f, prime to `avoid`.
std::vector<i64> represented_primes(const QuadForm& f, i64 avoid, std::size_t count) {
    std::vector<i64> out;
    for (i64 y = 1; out.size() < count; ++y) {
        for (i64 x = -8 * y - 64; x <= 8 * y + 64 && out.size() < count; ++x) {
            if (std::gcd(x, y) != 1) continue;
            i64 v = f.a * x * x + f.b * x * y + f.c * y * y;
            if (v < 3 || avoid % v == 0 || !is_prime(v)) continue;
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    }
    return out;
}

int twist_flip(i64 r, i64 q) { return r != 1 && kronecker(r, q) == -1; }

// Unramified cyclic quartic field through K_{disc/a, a}: a Redei field plus the
// rational twist in {1, -1, 2, -2} under which principal primes split completely.
struct QuarticField {
    RedeiField L;
    i64 twist = 1;

    HalfSymbol at(i64 q) const {
        HalfSymbol s = prime_symbol(L, q);
        if (twist_flip(twist, q)) s += HalfSymbol{1};
        return s;
    }
};

QuarticField quartic_field(i64 disc, const SquareClass& a) {
    i64 D1 = field_discriminant(a);
    require(disc % D1 == 0, "a is not a discriminant divisor");
    SquareClass A = squarefree_part(disc / D1).s;
    QuarticField F{build_redei_field(A, a), 1};
    auto principal = represented_primes(identity_form(disc), 2 * disc, 24);
    for (i64 r : {1, -1, 2, -2}) {
        bool ok = true;
        for (i64 q : principal) {
            if (prime_symbol(F.L, q).value != twist_flip(r, q)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            F.twist = r;
            return F;
        }
    }
    throw HypothesisViolation("no twist of L_{" + std::to_string(A.value()) + "," + std::to_string(a.value()) +
                              "} is unramified over Q(sqrt " + std::to_string(disc) + ")");
}

}  // namespace

i64 field_discriminant(const SquareClass& a) { return mod(a.value(), 4) == 1 ? a.value() : 4 * a.value(); }

VSpaces v_spaces_disc(i64 disc, i64 drop) {
    if (disc >= 0 || !is_fundamental(disc)) throw NotFundamental(disc);
    require(drop != 2 && relation_norm(disc) % drop == 0, "dropped prime must divide the relation norm");
    VSpaces out;
    std::vector<i64> ram;
    for (i64 q : prime_divisors(disc))
        if (q != drop) ram.push_back(q);
    std::vector<i64> pds;
    for (i64 D : prime_discriminants(disc))
        if (D % drop != 0) pds.push_back(D);
    auto all_ram = prime_divisors(disc);
    auto pd_all = prime_discriminants(disc);

    // b (subset of ram) lies in 2 Cl iff every genus character vanishes on it.
    std::vector<std::uint64_t> rows;
    for (i64 D : pd_all) {
        std::uint64_t r = 0;
        for (std::size_t j = 0; j < ram.size(); ++j)
            if (genus_character(D, disc, ram[j]) == -1) r |= std::uint64_t{1} << j;
        rows.push_back(r);
    }
    for (auto v : f2_kernel(rows, static_cast<int>(ram.size()))) {
        i64 b = 1;
        for (std::size_t j = 0; j < ram.size(); ++j)
            if ((v >> j) & 1) b *= ram[j];
        out.tor.emplace_back(b);
    }

    // chi_{D1} (D1 a product of pds) kills Cl[2] iff it vanishes on every ramified prime.
    rows.clear();
    for (i64 q : all_ram) {
        std::uint64_t r = 0;
        for (std::size_t j = 0; j < pds.size(); ++j)
            if (genus_character(pds[j], disc, q) == -1) r |= std::uint64_t{1} << j;
        rows.push_back(r);
    }
    for (auto v : f2_kernel(rows, static_cast<int>(pds.size()))) {
        i64 D1 = 1;
        for (std::size_t j = 0; j < pds.size(); ++j)
            if ((v >> j) & 1) D1 *= pds[j];
        out.quo.push_back(squarefree_part(D1).s);
    }
    return out;
}

VSpaces v_spaces(i64 d, i64 p0) {
    require(d < 0, "d must be negative");
    require(p0 > 2 && is_prime(p0) && d % p0 != 0, "p0 must be an odd prime not dividing d");
    return v_spaces_disc(d * p0, p0);
}

bool is_generic(i64 d, i64 p0) {
    auto v = v_spaces(d, p0);
    std::vector<std::uint64_t> tor;
    // Square classes dividing d as bit vectors over (-1, primes of d).
    auto primes = prime_divisors(-d);
    auto vec = [&](const SquareClass& s) {
        std::uint64_t r = s.value() < 0 ? 1 : 0;
        for (std::size_t j = 0; j < primes.size(); ++j)
            if (s.value() % primes[j] == 0) r |= std::uint64_t{2} << j;
        return r;
    };
    for (auto& b : v.tor) tor.push_back(vec(b));
    std::vector<std::uint64_t> quo;
    for (auto& a : v.quo) quo.push_back(vec(a));
    std::vector<std::uint64_t> both = tor;
    both.insert(both.end(), quo.begin(), quo.end());
    return f2_rank(both) == static_cast<int>(tor.size() + quo.size());
}

HalfSymbol pairing(i64 disc, const SquareClass& a, const SquareClass& b) {
    QuarticField F = quartic_field(disc, a);
    QuadForm f = reduce(ideal_form(disc, b.value()));
    return F.at(represented_primes(f, 2 * disc, 1).front());
}

F2Matrix pairing_matrix(i64 disc, const VSpaces& v) {
    const int m = static_cast<int>(v.quo.size());
    require(v.tor.size() == v.quo.size(), "V-spaces of unequal dimension");
    F2Matrix M(m, m);
    if (m == 0) return M;
    std::vector<i64> reps;
    for (auto& b : v.tor) reps.push_back(represented_primes(reduce(ideal_form(disc, b.value())), 2 * disc, 1).front());
    for (int i = 0; i < m; ++i) {
        QuarticField F = quartic_field(disc, v.quo[i]);
        for (int j = 0; j < m; ++j) M.set(i, j, F.at(reps[j]).value);
    }
    return M;
}

F2Matrix pairing_matrix(i64 d, i64 p) { return pairing_matrix(d * p, v_spaces(d, p)); }

F2Matrix pairing_matrix_disc(i64 disc) {
    if (disc >= 0 || !is_fundamental(disc)) throw NotFundamental(disc);
    auto odd = prime_divisors(relation_norm(disc));
    odd.erase(std::remove(odd.begin(), odd.end(), 2), odd.end());
    if (odd.empty()) return F2Matrix(0, 0);  // disc in {-4, -8}
    return pairing_matrix(disc, v_spaces_disc(disc, odd.back()));
}

GoverningContext make_governing_context(i64 d, i64 p0) {
    GoverningContext ctx;
    ctx.d = d;
    ctx.p0 = p0;
    ctx.disc0 = d * p0;
    auto v = v_spaces(d, p0);
    ctx.basis_tor = v.tor;
    ctx.basis_quo = v.quo;
    ctx.m = static_cast<int>(v.tor.size());
    ctx.base_matrix = pairing_matrix(ctx.disc0, v);
    ctx.generic = is_generic(d, p0);
    if (ctx.generic) {
        ctx.fields.resize(ctx.m);
        for (int i = 0; i < ctx.m; ++i)
            for (int j = 0; j < ctx.m; ++j) ctx.fields[i].push_back(build_redei_field(v.quo[i], v.tor[j]));
    }
    return ctx;
}

bool transport_admissible(const GoverningContext& ctx, i64 p) {
    if (p < 3 || !is_prime(p) || ctx.d % p == 0) return false;
    if (mod(p, 8) != mod(ctx.p0, 8)) return false;
    for (i64 q : prime_divisors(-ctx.d))
        if (q != 2 && legendre(mod(p, q), q) != legendre(mod(ctx.p0, q), q)) return false;
    return true;
}

std::vector<i64> governed_primes(const GoverningContext& ctx, i64 N) {
    std::vector<i64> out;
    for (i64 p : primes_below(N))
        if (p < N && transport_admissible(ctx, p)) out.push_back(p);
    return out;
}

F2Matrix correction_matrix(const GoverningContext& ctx, i64 p) {
    require(ctx.generic, "transport needs a generic context");
    require(transport_admissible(ctx, p), "p p0 is not a square mod 8d");
    F2Matrix C(ctx.m, ctx.m);
    if (p == ctx.p0) return C;
    SquareClass c(p * ctx.p0);
    for (int i = 0; i < ctx.m; ++i)
        for (int j = 0; j < ctx.m; ++j) C.set(i, j, artin_symbol(ctx.fields[i][j], c).value);
    return C;
}

F2Matrix transport_matrix(const GoverningContext& ctx, i64 p) { return ctx.base_matrix + correction_matrix(ctx, p); }

int predict_8rank(const GoverningContext& ctx, i64 p) { return transport_matrix(ctx, p).corank(); }

}  // namespace govlab
