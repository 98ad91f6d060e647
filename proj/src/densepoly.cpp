#include "simplexdet/densepoly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "simplexdet/errors.hpp"

namespace simplexdet {

namespace {

void trim(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

// Monic gcd degree of f and f' over F_p; returns -1 when a leading
// coefficient vanishes mod p (prime unusable).
long long gcd_degree_mod(const DensePoly& f, u64 p) {
    const auto reduce = [&](const Int& v) { return mpz_fdiv_ui(v.get_mpz_t(), p); };
    std::vector<u64> a(f.c.size()), b;
    for (std::size_t i = 0; i < f.c.size(); ++i) a[i] = reduce(f.c[i]);
    if (a.empty() || a.back() == 0) return -1;
    b.resize(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) b[i - 1] = mulmod(a[i], i % p, p);
    while (!b.empty() && b.back() == 0) b.pop_back();
    if (b.size() != a.size() - 1) return -1;  // degree dropped mod p

    // Euclidean remainder sequence.
    auto mod_inverse = [&](u64 x) {
        // Fermat: x^(p-2) mod p.
        u64 r = 1, base = x, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, base, p);
            base = mulmod(base, base, p);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        const u64 inv = mod_inverse(b.back());
        std::vector<u64> r = a;
        for (std::size_t shift = r.size() - b.size() + 1; shift-- > 0;) {
            const u64 q = mulmod(r[shift + b.size() - 1], inv, p);
            if (q == 0) continue;
            for (std::size_t i = 0; i < b.size(); ++i) {
                const u64 sub = mulmod(q, b[i], p);
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.resize(b.size() - 1);
        while (!r.empty() && r.back() == 0) r.pop_back();
        a = std::move(b);
        b = std::move(r);
    }
    return (long long)a.size() - 1;
}

// P(x) -> P(x + 1) in place.
void taylor_shift_1(std::vector<Int>& c) {
    const std::size_t d = c.size();
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t j = d - 1; j > i; --j) c[j - 1] += c[j];
}

// Number of sign variations in the coefficient list.
int variations(const std::vector<Int>& c) {
    int v = 0, last = 0;
    for (const Int& x : c) {
        const int s = mpz_sgn(x.get_mpz_t());
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Descartes bound on roots of P inside (0,1): variations of
// (1+x)^d P(1/(1+x)).
int variations_01(std::vector<Int> c) {
    std::reverse(c.begin(), c.end());
    taylor_shift_1(c);
    return variations(c);
}

// P(x) -> 2^d P(x/2) and P(x) -> 2^d P((x+1)/2), the two half-interval maps.
std::vector<Int> left_half(const std::vector<Int>& c) {
    std::vector<Int> r = c;
    const std::size_t d = r.size() - 1;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] <<= (d - i);
    return r;
}

std::vector<Int> right_half(const std::vector<Int>& c) {
    std::vector<Int> r = left_half(c);
    taylor_shift_1(r);
    return r;
}

// Exact division by (2x - 1), valid when 1/2 is a root.
std::vector<Int> deflate_half_root(const std::vector<Int>& c) {
    // P = (2x - 1) Q. Working down from the top coefficient:
    // q_{i-1} = (c_i + q_i) / 2 with q_d = 0.
    std::vector<Int> q(c.size() - 1);
    Int carry = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
        Int num = c[i] + carry;
        if (mpz_odd_p(num.get_mpz_t()))
            throw invariant_violation("deflate_half_root: inexact division");
        q[i - 1] = num >> 1;
        carry = q[i - 1];
    }
    if (c[0] + carry != 0) throw invariant_violation("deflate_half_root: 1/2 is not a root");
    return q;
}

struct VcaCtx {
    Isolation out;
    int max_depth;
};

// Interval (lo, lo + width) in (0,1) encoded by dyadics.
void vca_recurse(std::vector<Int> c, const Rat& lo, const Rat& width, int depth, VcaCtx& ctx) {
    trim(c);
    const int v = variations_01(c);
    if (v == 0) return;
    if (v == 1) {
        ctx.out.brackets.emplace_back(lo, lo + width);
        return;
    }
    if (depth >= ctx.max_depth) throw budget_exhausted("vca: depth limit reached");
    const Rat mid = lo + width / 2;
    std::vector<Int> l = left_half(c);
    std::vector<Int> r = right_half(c);
    while (r[0] == 0) {
        // Exact root at the midpoint; deflate so the halves below never
        // contain it in their interiors. Repeats record multiplicity.
        ctx.out.exact_roots.push_back(mid);
        c = deflate_half_root(c);
        trim(c);
        if (c.size() <= 1) return;
        l = left_half(c);
        r = right_half(c);
    }
    vca_recurse(std::move(l), lo, width / 2, depth + 1, ctx);
    vca_recurse(std::move(r), mid, width / 2, depth + 1, ctx);
}

}  // namespace

Rat DensePoly::value_at(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Rat(c[i]);
    return acc;
}

DensePoly dense_from_sparse(const SparsePoly& f, long long max_degree) {
    if (f.degree() > max_degree)
        throw std::invalid_argument("dense_from_sparse: degree above the configured cap");
    DensePoly g;
    if (f.empty()) return g;
    g.c.assign(f.degree() + 1, Int(0));
    for (std::size_t l = 0; l < f.terms(); ++l) g.c[f.exps[l]] = f.coefs[l];
    return g;
}

bool squarefree_certificate(const DensePoly& f) {
    if (f.degree() < 1) return true;
    for (u64 p : {u64(2305843009213693951ULL) /* 2^61 - 1 */, u64(2147483647ULL) /* 2^31 - 1 */}) {
        const long long g = gcd_degree_mod(f, p);
        if (g == 0) return true;
    }
    return false;
}

Isolation isolate_roots_01(const DensePoly& f, int max_depth) {
    if (f.zero()) throw std::invalid_argument("isolate_roots_01: zero polynomial");
    VcaCtx ctx;
    ctx.max_depth = max_depth;
    vca_recurse(f.c, Rat(0), Rat(1), 0, ctx);
    return ctx.out;
}

namespace {

// A strictly negative point of f adjacent to a simple root, approached from
// the side where f dips below zero. `from` is the root or an endpoint with
// known sign, `toward` the other end of the region to probe.
std::optional<Rat> probe_negative(const DensePoly& f, const Rat& from, const Rat& toward,
                                  int max_steps) {
    Rat step = (toward - from) / 2;
    for (int i = 0; i < max_steps; ++i) {
        const Rat x = from + step;
        if (x > 0 && x < 1 && f.value_at(x) < 0) return x;
        step /= 2;
    }
    return std::nullopt;
}

}  // namespace

NonnegResult nonnegative_on_unit_dense(const DensePoly& f, int max_depth) {
    if (!squarefree_certificate(f))
        throw budget_exhausted("nonnegative_on_unit_dense: square-freeness unresolved");
    const Isolation iso = isolate_roots_01(f, max_depth);
    if (iso.brackets.empty() && iso.exact_roots.empty()) {
        // No roots in (0,1): the sign near 0 rules the whole interval.
        for (const Int& x : f.c) {
            const int s = mpz_sgn(x.get_mpz_t());
            if (s > 0) return {true, Rat(0)};
            if (s < 0) return {false, Rat(1, 2)};
        }
        return {true, Rat(0)};
    }
    // Square-free, so every root is a simple crossing and f is strictly
    // negative on one side of it. Extract an exact negative witness.
    if (!iso.exact_roots.empty()) {
        const Rat& rho = iso.exact_roots.front();
        if (auto w = probe_negative(f, rho, Rat(0), max_depth)) return {false, *w};
        if (auto w = probe_negative(f, rho, Rat(1), max_depth)) return {false, *w};
        throw budget_exhausted("nonnegative_on_unit_dense: witness search stalled");
    }
    const Rat a = iso.brackets.front().first;
    const Rat b = iso.brackets.front().second;
    if (a > 0 && f.value_at(a) < 0) return {false, a};
    if (b < 1 && f.value_at(b) < 0) return {false, b};
    // The bracket holds one simple crossing, so f is strictly negative on
    // the piece between the crossing and one end. Shrinking probes from
    // each end land in that piece.
    if (auto w = probe_negative(f, a, b, max_depth)) return {false, *w};
    if (auto w = probe_negative(f, b, a, max_depth)) return {false, *w};
    throw budget_exhausted("nonnegative_on_unit_dense: witness search stalled");
}

}  // namespace simplexdet
