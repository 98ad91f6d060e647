#include "simplexdet/sparsepoly.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "simplexdet/certified.hpp"
#include "simplexdet/errors.hpp"

namespace simplexdet {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;

// Mutable evaluation state shared across one engine query.
struct Ctx {
    const EngineBudget& budget;
    long long evals = 0;

    void tick() {
        ++evals;
        if (evals > budget.max_evals)
            throw budget_exhausted("sign engine: evaluation budget exhausted");
        if (budget.deadline && (evals & 1023) == 0 &&
            std::chrono::steady_clock::now() > *budget.deadline)
            throw budget_exhausted("sign engine: deadline exceeded");
    }
};

int sgn_int(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

// Certified enclosure of f(x) for x > 0 by Horner evaluation from the
// highest exponent down.
CReal enclosure_at(const SparsePoly& f, const Rat& x, mpfr_prec_t prec) {
    const CReal xx = CReal::from_rat(x, prec);
    const std::size_t L = f.terms();
    CReal acc = CReal::from_int(f.coefs[L - 1], prec);
    for (std::size_t l = L - 1; l-- > 0;) {
        const unsigned long gap = (unsigned long)(f.exps[l + 1] - f.exps[l]);
        acc = acc * xx.pow_ui(gap) + CReal::from_int(f.coefs[l], prec);
    }
    if (f.exps[0] > 0) acc = acc * xx.pow_ui((unsigned long)f.exps[0]);
    return acc;
}

// Exact sign of f(x) for x = a/b > 0 via the integer
// sum c_l a^{e_l} b^{e_max - e_l}, assembled by Horner steps.
int exact_sign_at(const SparsePoly& f, const Rat& x) {
    const Int& a = x.get_num();
    const Int& b = x.get_den();
    const unsigned long bbits = bit_length(b) + bit_length(a);
    if ((double)bbits * (double)f.degree() > double(1LL << 31))
        throw budget_exhausted("sign engine: exact evaluation too large");
    const std::size_t L = f.terms();
    Int acc = f.coefs[L - 1];
    Int bpow = 1;
    for (std::size_t l = L - 1; l-- > 0;) {
        const unsigned long gap = (unsigned long)(f.exps[l + 1] - f.exps[l]);
        bpow *= ipow(b, gap);
        acc = acc * ipow(a, gap) + f.coefs[l] * bpow;
    }
    return sgn_int(acc);
}

int certified_sign_at(const SparsePoly& f, const Rat& x, Ctx& ctx) {
    ctx.tick();
    if (f.empty()) return 0;
    if (sgn_int(x.get_num()) <= 0) throw std::invalid_argument("sign engine: x must be positive");
    for (mpfr_prec_t prec = kStartPrec; prec <= ctx.budget.max_prec; prec *= 2) {
        const CReal v = enclosure_at(f, x, prec);
        if (v.strictly_positive()) return 1;
        if (v.strictly_negative()) return -1;
    }
    return exact_sign_at(f, x);
}

// Upper bound on |f'| over (0, b], monotone in b.
CReal derivative_bound(const SparsePoly& f, const Rat& b, mpfr_prec_t prec) {
    const CReal bb = CReal::from_rat(b, prec);
    CReal m(prec);
    for (std::size_t l = 0; l < f.terms(); ++l) {
        if (f.exps[l] == 0) continue;
        const CReal mag = CReal::from_int(abs(f.coefs[l]) * int_from(f.exps[l]), prec);
        m = m + mag * bb.pow_ui((unsigned long)(f.exps[l] - 1));
    }
    return m;
}

SparsePoly strip_valuation(const SparsePoly& f) {
    if (f.empty() || f.exps[0] == 0) return f;
    SparsePoly g = f;
    const long long v = g.exps[0];
    for (auto& e : g.exps) e -= v;
    return g;
}

// Moves outward from `from` (just inside the gap toward `limit`) until f is
// nonzero, returning the point and its sign. `limit` bounds the excursion;
// the first probe is a quarter of the way.
std::pair<Rat, int> nudge_nonzero(const SparsePoly& f, const Rat& from, const Rat& limit,
                                  Ctx& ctx) {
    Rat step = (limit - from) / 4;
    for (int j = 0; j < ctx.budget.max_bisect_bits; ++j) {
        const Rat x = from + step;
        const int s = certified_sign_at(f, x, ctx);
        if (s != 0) return {x, s};
        step /= 2;
    }
    throw budget_exhausted("sign engine: could not leave a root cluster");
}

// Sign of f immediately left of 1 when f(1) itself may be zero. Stripping a
// power of u changes no value at x = 1, so while every lower derivative
// vanishes there the chain value at 1 equals the true derivative value; the
// first nonzero one fixes the approach sign, flipping once per level.
int approach_sign_left_of_one(SparsePoly f) {
    int flip = 1;
    for (;;) {
        const int s = sgn(f.value_at_one());
        if (s != 0) return flip * s;
        if (f.terms() <= 1) return 0;
        f = derivative_stripped(f);
        flip = -flip;
    }
}

SignDecomposition decompose_rec(const SparsePoly& f, Ctx& ctx) {
    SignDecomposition out;
    const std::size_t L = f.terms();
    if (L == 1) {
        const int s = sgn_int(f.coefs[0]);
        out.sign_near_zero = s;
        out.sign_at_one = s;
        return out;
    }

    const SparsePoly fp = derivative_stripped(f);
    const SignDecomposition dp = decompose_rec(fp, ctx);

    out.sign_near_zero = sgn_int(f.coefs[0]);

    // Zones of f' bound the non-monotone stretches. Evaluate f at each
    // boundary, widening a zone into its gap when the boundary happens to
    // be a root of f; when that gap has zero width because two zones share
    // the endpoint, the zones merge into one instead.
    struct Mark {
        Rat a, b;
        int sa = 0, sb = 0;
    };
    std::vector<Mark> marks(dp.zones.size());
    for (std::size_t i = 0; i < dp.zones.size(); ++i) {
        marks[i].a = dp.zones[i].a;
        marks[i].b = dp.zones[i].b;
    }
    std::vector<Mark> fixed;
    fixed.reserve(marks.size());
    bool carry = false;
    Rat carry_a;
    int carry_sa = 0;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        Mark cur = marks[i];
        if (carry) {
            cur.a = carry_a;
            cur.sa = carry_sa;
            carry = false;
        } else {
            cur.sa = certified_sign_at(f, cur.a, ctx);
            if (cur.sa == 0) {
                const Rat floor_left = fixed.empty() ? Rat(0) : fixed.back().b;
                if (!fixed.empty() && floor_left == cur.a) {
                    cur.a = fixed.back().a;
                    cur.sa = fixed.back().sa;
                    fixed.pop_back();
                } else {
                    auto [x, sx] = nudge_nonzero(f, cur.a, floor_left, ctx);
                    cur.a = x;
                    cur.sa = sx;
                }
            }
        }
        cur.sb = certified_sign_at(f, cur.b, ctx);
        if (cur.sb == 0) {
            const Rat ceil_right = i + 1 < marks.size() ? marks[i + 1].a : Rat(1);
            if (ceil_right == cur.b) {
                carry = true;
                carry_a = cur.a;
                carry_sa = cur.sa;
                continue;
            }
            auto [x, sx] = nudge_nonzero(f, cur.b, ceil_right, ctx);
            cur.b = x;
            cur.sb = sx;
        }
        fixed.push_back(cur);
    }
    if (carry) throw invariant_violation("sign engine: dangling zone merge");

    int s_end = certified_sign_at(f, Rat(1), ctx);
    if (s_end == 0) s_end = approach_sign_left_of_one(f);
    out.sign_at_one = s_end;

    // Monotone gaps between consecutive zones: at most one root each,
    // bracketed by bisection when the edge signs differ. Brackets keep both
    // endpoints strictly inside (0, 1) so every zone of the decomposition
    // stays interior.
    auto bracket_gap = [&](const Rat& lo0, int s_l, const Rat& hi0, int s_r) -> Zone {
        Rat lo = lo0, hi = hi0;
        bool lo_pending = lo == 0;  // sign s_l holds near zero, not at zero
        bool hi_pending = hi == 1;  // sign s_r may be the approach sign only
        for (int j = 0; j < ctx.budget.max_bisect_bits; ++j) {
            const Rat mid = lo_pending ? Rat(hi / 2) : Rat((lo + hi) / 2);
            const int sm = certified_sign_at(f, mid, ctx);
            if (sm == 0) {
                // Unique root of a monotone stretch found exactly; flanking
                // points inherit the edge signs without further evaluation.
                const Rat left = lo_pending ? Rat(mid / 2) : Rat((lo + mid) / 2);
                return Zone{left, (mid + hi) / 2, s_l, s_r};
            }
            if (sm == s_l) {
                lo = mid;
                lo_pending = false;
            } else {
                hi = mid;
                hi_pending = false;
            }
            if (!lo_pending && !hi_pending) return Zone{lo, hi, s_l, s_r};
        }
        throw budget_exhausted("sign engine: gap bracketing exceeded depth");
    };

    std::vector<Zone> zones;
    const std::size_t r = fixed.size();
    for (std::size_t g = 0; g <= r; ++g) {
        const Rat lo = g == 0 ? Rat(0) : fixed[g - 1].b;
        const int s_l = g == 0 ? out.sign_near_zero : fixed[g - 1].sb;
        const Rat hi = g == r ? Rat(1) : fixed[g].a;
        const int s_r = g == r ? s_end : fixed[g].sa;
        if (lo < hi && s_l != s_r) zones.push_back(bracket_gap(lo, s_l, hi, s_r));
        if (g < r) zones.push_back(Zone{fixed[g].a, fixed[g].b, fixed[g].sa, fixed[g].sb});
    }
    out.zones = std::move(zones);
    return out;
}

}  // namespace

SparsePoly SparsePoly::from_terms(std::vector<std::pair<long long, Int>> raw) {
    std::map<long long, Int> merged;
    for (auto& [e, c] : raw) {
        if (e < 0) throw std::invalid_argument("SparsePoly: negative exponent");
        merged[e] += c;
    }
    SparsePoly f;
    for (auto& [e, c] : merged) {
        if (c == 0) continue;
        f.exps.push_back(e);
        f.coefs.push_back(c);
    }
    return f;
}

Rat SparsePoly::value_at(const Rat& x) const {
    if (empty()) return Rat(0);
    const std::size_t L = terms();
    Rat acc(coefs[L - 1]);
    for (std::size_t l = L - 1; l-- > 0;) {
        acc = acc * pow_rat(x, (unsigned long)(exps[l + 1] - exps[l])) + Rat(coefs[l]);
    }
    if (exps[0] > 0) acc *= pow_rat(x, (unsigned long)exps[0]);
    return acc;
}

Int SparsePoly::value_at_one() const {
    Int s = 0;
    for (const auto& c : coefs) s += c;
    return s;
}

SparsePoly derivative_stripped(const SparsePoly& f) {
    std::vector<std::pair<long long, Int>> terms;
    for (std::size_t l = 0; l < f.terms(); ++l) {
        if (f.exps[l] == 0) continue;
        terms.emplace_back(f.exps[l] - 1, f.coefs[l] * int_from(f.exps[l]));
    }
    return strip_valuation(SparsePoly::from_terms(std::move(terms)));
}

SparsePoly properness_polynomial(const UePolynomial& ue, bool skip_first_row) {
    std::vector<std::pair<long long, Int>> weights(ue.terms.begin(), ue.terms.end());
    if (skip_first_row) {
        const long long first = ue.terms.back().first;  // the heaviest codeword
        bool removed = false;
        for (auto& [w, c] : weights)
            if (w == first) {
                c -= 1;
                removed = true;
            }
        if (!removed) throw invariant_violation("properness_polynomial: first row weight missing");
    }
    long long d = 0;
    for (const auto& [w, c] : weights)
        if (c > 0) {
            d = w;
            break;
        }
    std::vector<std::pair<long long, Int>> terms;
    for (const auto& [w, c] : weights) {
        if (c == 0) continue;
        terms.emplace_back(w - d, c * int_from(w));
        terms.emplace_back(w - d + 1, -c * int_from(ue.n - w));
    }
    return SparsePoly::from_terms(std::move(terms));
}

SparsePoly ratio_critical_polynomial(const SparsePoly& s, long long n_power) {
    std::vector<std::pair<long long, Int>> terms;
    for (std::size_t l = 0; l < s.terms(); ++l) {
        const long long e = s.exps[l];
        if (e > 0) terms.emplace_back(e - 1, s.coefs[l] * int_from(e));
        terms.emplace_back(e, s.coefs[l] * int_from(e - n_power));
    }
    return SparsePoly::from_terms(std::move(terms));
}

int sign_at(const SparsePoly& f, const Rat& x, const EngineBudget& budget) {
    Ctx ctx{budget};
    return certified_sign_at(f, x, ctx);
}

SignDecomposition decompose_signs(const SparsePoly& f, const EngineBudget& budget) {
    if (f.empty()) throw std::invalid_argument("decompose_signs: zero polynomial");
    Ctx ctx{budget};
    return decompose_rec(strip_valuation(f), ctx);
}

NonnegResult nonnegative_on_unit(const SparsePoly& f0, const EngineBudget& budget) {
    if (f0.empty()) return {true, Rat(0)};
    Ctx ctx{budget};
    const SparsePoly f = strip_valuation(f0);

    if (sgn_int(f.coefs[0]) < 0) {
        // Negative near the origin; walk in until the sign shows.
        Rat x(1, 2);
        for (int j = 0; j < ctx.budget.max_bisect_bits; ++j, x /= 2)
            if (certified_sign_at(f, x, ctx) < 0) return {false, x};
        throw budget_exhausted("nonnegative_on_unit: negative sign did not materialize");
    }

    const SignDecomposition dec = decompose_rec(f, ctx);
    if (dec.sign_at_one < 0) {
        // Negative at or just left of 1; walk inward to a point where the
        // strict sign certifies.
        Rat gap(1, 2);
        for (int j = 0; j < ctx.budget.max_bisect_bits; ++j, gap /= 2) {
            const Rat x = 1 - gap;
            if (certified_sign_at(f, x, ctx) < 0) return {false, x};
        }
        throw budget_exhausted("nonnegative_on_unit: negative sign did not materialize");
    }
    for (const Zone& z : dec.zones) {
        if (z.sign_a < 0) return {false, z.a};
        if (z.sign_b < 0) return {false, z.b};
    }

    // All sampled signs are positive; only interior dips inside zones can
    // spoil nonnegativity now.
    std::deque<std::pair<Rat, Rat>> work;
    for (const Zone& z : dec.zones) work.emplace_back(z.a, z.b);
    const Rat tol = Rat(1) / Rat(pow2(ctx.budget.max_bisect_bits));
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        bool cleared = false;
        for (mpfr_prec_t prec = kStartPrec; prec <= ctx.budget.max_prec; prec *= 2) {
            ctx.tick();
            const CReal fa = enclosure_at(f, a, prec);
            const CReal fb = enclosure_at(f, b, prec);
            if (!fa.strictly_positive() || !fb.strictly_positive()) break;
            // Every x in [a,b] is within (b-a)/2 of the nearer endpoint.
            const CReal slack = derivative_bound(f, b, prec) * CReal::from_rat((b - a) / 2, prec);
            const CReal margin = CReal::hull(fa, fb);  // lower end is min(f(a), f(b))
            if ((margin - slack).strictly_positive()) {
                cleared = true;
                break;
            }
            if (prec >= 1024) break;  // subdivision is cheaper than precision here
        }
        if (cleared) continue;
        if (b - a < tol) throw budget_exhausted("nonnegative_on_unit: zone refinement stalled");
        const Rat mid = (a + b) / 2;
        const int sm = certified_sign_at(f, mid, ctx);
        if (sm < 0) return {false, mid};
        if (sm == 0) throw budget_exhausted("nonnegative_on_unit: exact interior root");
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    return {true, Rat(0)};
}

MaxCompare ratio_max_exceeds(const SparsePoly& s, long long n_power, const Rat& threshold,
                             const EngineBudget& budget) {
    if (s.empty()) return {false, Rat(0)};
    Ctx ctx{budget};
    for (const auto& c : s.coefs)
        if (c <= 0) throw std::invalid_argument("ratio_max_exceeds: coefficients must be positive");
    if (s.exps[0] == 0) throw std::invalid_argument("ratio_max_exceeds: constant term not allowed");
    if (threshold <= 0) throw std::invalid_argument("ratio_max_exceeds: threshold must be positive");

    // Exact comparison of R(x) = S(x)/(1+x)^N with the threshold,
    // filtered through interval arithmetic.
    auto exceeds_at = [&](const Rat& x) -> bool {
        for (mpfr_prec_t prec = kStartPrec; prec <= ctx.budget.max_prec; prec *= 2) {
            ctx.tick();
            const CReal sx = enclosure_at(s, x, prec);
            const CReal den =
                (CReal::from_long(1, prec) + CReal::from_rat(x, prec)).pow_ui((unsigned long)n_power);
            const auto cmp = (sx / den).compare_to(threshold);
            if (cmp.has_value()) return *cmp > 0;
        }
        ctx.tick();
        return s.value_at(x) > threshold * pow_rat(1 + x, (unsigned long)n_power);
    };

    if (exceeds_at(Rat(1))) return {true, Rat(1)};

    const SparsePoly t = ratio_critical_polynomial(s, n_power);
    SignDecomposition dec;
    if (!t.empty()) dec = decompose_signs(t, budget);

    std::deque<std::pair<Rat, Rat>> work;
    for (const Zone& z : dec.zones) {
        if (exceeds_at(z.a)) return {true, z.a};
        if (exceeds_at(z.b)) return {true, z.b};
        work.emplace_back(z.a, z.b);
    }

    const Rat tol = Rat(1) / Rat(pow2(ctx.budget.max_bisect_bits));
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        // sup over [a,b] of R is at most S(b)/(1+a)^N.
        bool below = false;
        for (mpfr_prec_t prec = kStartPrec; prec <= ctx.budget.max_prec; prec *= 2) {
            ctx.tick();
            const CReal sb = enclosure_at(s, b, prec);
            const CReal den =
                (CReal::from_long(1, prec) + CReal::from_rat(a, prec)).pow_ui((unsigned long)n_power);
            const auto cmp = (sb / den).compare_to(threshold);
            if (cmp.has_value()) {
                below = *cmp < 0;
                break;
            }
            if (prec >= 1024) break;
        }
        if (below) continue;
        if (b - a < tol) throw budget_exhausted("ratio_max_exceeds: zone refinement stalled");
        const Rat mid = (a + b) / 2;
        if (exceeds_at(mid)) return {true, mid};
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    return {false, Rat(0)};
}

}  // namespace simplexdet
