// Classification cascade: cheap sufficient criteria, then exact engines.
#include "simplexdet/classifier.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "simplexdet/certified.hpp"
#include "simplexdet/errors.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/weights.hpp"

namespace simplexdet {

namespace {

// Largest degree the dense fallback route will expand to.
constexpr long long kDenseDegreeCap = 1 << 20;
// Largest n for which the exact big-integer comparison n^n is attempted.
constexpr long long kExactBoundCap = 1 << 24;

long long pow2ll(int e) { return 1LL << e; }

SparsePoly sum_poly(const UePolynomial& ue) {
    std::vector<std::pair<long long, Int>> raw;
    raw.reserve(ue.terms.size());
    for (const auto& [w, a] : ue.terms) raw.emplace_back(w, a);
    return SparsePoly::from_terms(std::move(raw));
}

// Does the single term a_w p^w (1-p)^{n-w} exceed 2^{k-n} somewhere on
// [0,1/2]? For 2w <= n the term peaks inside at p = w/n, reducing the test to
// a_w w^w (n-w)^{n-w} 2^{n-k} > n^n; certified logarithmic comparison first,
// exact integer powers as the arbiter when the certified interval cannot
// separate the sides. For 2w > n the peak on [0,1/2] is at 1/2 with value
// a_w 2^{-n} < 2^{k-n}, so the term never certifies anything there.
bool term_beats_bound(const Int& a_w, long long w, long long n, int k) {
    if (w <= 0 || w > n || a_w <= 0) throw std::invalid_argument("term_beats_bound: bad term");
    if (2 * w > n) return false;
    if (w < n) {
        for (mpfr_prec_t prec = 256; prec <= 8192; prec *= 2) {
            const CReal lw = CReal::from_long((long)w, prec);
            const CReal lnw = CReal::from_long((long)(n - w), prec);
            const CReal ln = CReal::from_long((long)n, prec);
            const CReal lhs = CReal::from_int(a_w, prec).log2() + lw * lw.log2() +
                              lnw * lnw.log2() + CReal::from_long((long)(n - k), prec);
            const auto cmp = lhs.compare_to(ln * ln.log2());
            if (cmp.has_value()) return *cmp > 0;
        }
    }
    if (n > kExactBoundCap)
        throw budget_exhausted("term_beats_bound: certified comparison stalled at large n");
    const Int lhs = a_w * ipow(int_from(w), (unsigned long)w) *
                    ipow(int_from(n - w), (unsigned long)(n - w)) *
                    pow2((unsigned long)(n - k));
    return lhs > ipow(int_from(n), (unsigned long)n);
}

}  // namespace

const char* to_string(Tristate v) {
    switch (v) {
        case Tristate::no: return "no";
        case Tristate::yes: return "yes";
        default: return "unknown";
    }
}

const char* to_string(DecidedBy v) {
    switch (v) {
        case DecidedBy::boundary_distribution: return "boundary_distribution";
        case DecidedBy::band_bound: return "band_bound";
        case DecidedBy::edge_interval: return "edge_interval";
        case DecidedBy::min_term_bound: return "min_term_bound";
        case DecidedBy::weight_term_bound: return "weight_term_bound";
        case DecidedBy::copy_lifting: return "copy_lifting";
        case DecidedBy::root_isolation: return "root_isolation";
        default: return "oracle";
    }
}

DensePoly derivative_polynomial(const UePolynomial& ue) {
    if (ue.terms.empty()) throw std::invalid_argument("derivative_polynomial: empty polynomial");
    const long long d = ue.terms.front().first;
    const long long W = ue.terms.back().first;
    if (W - d + 1 > kDenseDegreeCap)
        throw std::invalid_argument("derivative_polynomial: expansion too large");
    std::vector<Int> c((std::size_t)(W - d + 2));
    for (const auto& [w, a] : ue.terms) {
        // a p^{w-d} (1-p)^{W-w} (w - n p), expanded binomially.
        Int bin = 1;
        for (long long j = 0; j <= W - w; ++j) {
            const Int signed_bin = (j % 2 == 0) ? bin : Int(-bin);
            c[(std::size_t)(w - d + j)] += a * signed_bin * int_from(w);
            c[(std::size_t)(w - d + j + 1)] -= a * signed_bin * int_from(ue.n);
            if (j < W - w) bin = bin * int_from(W - w - j) / int_from(j + 1);
        }
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return DensePoly{std::move(c)};
}

Tristate is_proper(const UePolynomial& ue, bool skip_first_row, const EngineBudget& budget) {
    if (ue.n < pow2ll(ue.k - 1) + 1)
        throw std::invalid_argument("is_proper: n must exceed 2^{k-1}");
    const SparsePoly f = properness_polynomial(ue, skip_first_row);
    try {
        return nonnegative_on_unit(f, budget).nonneg ? Tristate::yes : Tristate::no;
    } catch (const budget_exhausted&) {
    }
    if (f.degree() <= kDenseDegreeCap) {
        try {
            const DensePoly df = dense_from_sparse(f, kDenseDegreeCap);
            return nonnegative_on_unit_dense(df).nonneg ? Tristate::yes : Tristate::no;
        } catch (const budget_exhausted&) {
        }
    }
    return Tristate::unknown;
}

Tristate is_good(const UePolynomial& ue, const EngineBudget& budget) {
    try {
        const SparsePoly s = sum_poly(ue);
        const Rat theta = Rat(Int(pow2((unsigned long)ue.k) - 1)) / Rat(pow2((unsigned long)ue.n));
        return ratio_max_exceeds(s, ue.n, theta, budget).exceeds ? Tristate::no : Tristate::yes;
    } catch (const budget_exhausted&) {
        return Tristate::unknown;
    }
}

Tristate is_satisfactory(const UePolynomial& ue, const EngineBudget& budget) {
    try {
        const SparsePoly s = sum_poly(ue);
        const Rat theta = Rat(pow2((unsigned long)ue.k)) / Rat(pow2((unsigned long)ue.n));
        return ratio_max_exceeds(s, ue.n, theta, budget).exceeds ? Tristate::no : Tristate::yes;
    } catch (const budget_exhausted&) {
        return Tristate::unknown;
    }
}

Tristate is_proper_dual(const UePolynomial& ue, const EngineBudget& budget) {
    // With z = 1-2p the dual derivative is
    //     dP/dp = n (1-p)^{n-1} - 2^{1-k} psi(z),  psi(z) = sum A_w w z^{w-1},
    // and 1-p = (1+z)/2, so nonnegativity on p in (0,1/2) is exactly
    //     psi(z)/(1+z)^{n-1} <= n 2^{k-n} on z in (0,1).
    try {
        std::vector<std::pair<long long, Int>> raw;
        raw.reserve(ue.terms.size());
        for (const auto& [w, a] : ue.terms) raw.emplace_back(w - 1, a * int_from(w));
        const SparsePoly psi = SparsePoly::from_terms(std::move(raw));
        const Rat theta =
            Rat(Int(int_from(ue.n) * pow2((unsigned long)ue.k))) / Rat(pow2((unsigned long)ue.n));
        return ratio_max_exceeds(psi, ue.n - 1, theta, budget).exceeds ? Tristate::no
                                                                       : Tristate::yes;
    } catch (const budget_exhausted&) {
        return Tristate::unknown;
    }
}

bool ugly_by_min_term(int k, long long n) {
    const MinWeight mw = min_weight_term(k, n);
    return term_beats_bound(mw.a_d, mw.d, n, k);
}

bool ugly_by_weight(int k, long long n, long long w) {
    const WeightDistribution dist = weight_distribution(k, n);
    const auto it = dist.counts.find(w);
    if (it == dist.counts.end())
        throw std::invalid_argument("ugly_by_weight: weight not present in the distribution");
    return term_beats_bound(it->second, w, n, k);
}

ProperIntervals sufficient_proper_intervals(int k, int m, long long t) {
    if (k < 3 || k > 62 || m < 1 || m >= k || t < 1)
        throw std::invalid_argument("sufficient_proper_intervals: bad parameters");
    const Int scale = pow2((unsigned long)(k + 1)) * int_from(t + 1);
    const Int anchor = pow2((unsigned long)(k - 1)) * int_from(t + 1);

    auto to_ll = [](const Int& v) -> long long {
        if (!v.fits_slong_p())
            throw std::invalid_argument("sufficient_proper_intervals: interval out of range");
        return v.get_si();
    };

    ProperIntervals out;
    const Int cap = k - m - 2 >= 0 ? pow2((unsigned long)(k - m - 2)) : Int(0);

    const Int x1 = 1 + scale - pow2((unsigned long)(k - m + 2));
    Int tau1 = (1 + sqrt(x1)) / 2;
    if (tau1 > cap) tau1 = cap;
    const Int left1 = anchor - pow2((unsigned long)(k - m));
    out.lo1 = to_ll(left1);
    out.hi1 = to_ll(left1 + tau1);

    const Int x2 = 1 + scale - pow2((unsigned long)(k - m + 1));
    Int tau2 = (sqrt(x2) - 1) / 2;
    if (tau2 > cap - 1) tau2 = cap - 1;
    if (tau2 >= 0) {
        const Int right2 = anchor - pow2((unsigned long)(k - m - 1));
        out.lo2 = to_ll(right2 - tau2);
        out.hi2 = to_ll(right2);
    }
    return out;
}

int full_band_proper_threshold(int k, long long t) {
    if (k < 3 || t < 1) throw std::invalid_argument("full_band_proper_threshold: bad parameters");
    const int log_floor = 63 - __builtin_clzll((unsigned long long)t);
    const int a = k - 3 - log_floor;
    return a <= 2 ? 1 : (a + 1) / 2;
}

Verdict classify(int k, long long n, const ClassifyOptions& opts) {
    const CodeParams cp = decompose(k, n);
    if (n < pow2ll(k - 1) + 1) throw std::invalid_argument("classify: n must exceed 2^{k-1}");

    Verdict v;
    v.k = k;
    v.n = n;
    v.dual = opts.dual;

    if (opts.dual) {
        // Satisfactoriness transfers between a code and its dual exactly;
        // properness of the dual comes from the substituted derivative
        // criterion; goodness is reported only when the implication chain
        // settles it.
        ClassifyOptions primal = opts;
        primal.dual = false;
        const Verdict p = classify(k, n, primal);
        const UePolynomial ue = pue_of(k, n);
        v.satisfactory = p.satisfactory;
        v.proper = is_proper_dual(ue, opts.budget);
        if (v.proper == Tristate::yes)
            v.good = Tristate::yes;
        else if (v.satisfactory == Tristate::no)
            v.good = Tristate::no;
        else
            v.good = Tristate::unknown;
        if (v.good == Tristate::yes && v.satisfactory == Tristate::unknown)
            v.satisfactory = Tristate::yes;
        v.decided_by = DecidedBy::oracle;
        return v;
    }

    const WeightDistribution dist = weight_distribution(k, n);
    const UePolynomial ue = pue_from(dist);
    const long long d = dist.min_weight();

    v.ugly_by_min_term = term_beats_bound(dist.count_at_min(), d, n, k);

    if (opts.shortcuts) {
        if (v.ugly_by_min_term) {
            v.proper = v.good = v.satisfactory = Tristate::no;
            v.ugly_witness_weight = d;
            v.decided_by = DecidedBy::min_term_bound;
            return v;
        }
        if (2 * d >= n) {
            // Every term of P is increasing on [0,1/2].
            v.proper = v.good = v.satisfactory = Tristate::yes;
            v.decided_by = DecidedBy::boundary_distribution;
            return v;
        }
        if (cp.m >= 1 && cp.m >= full_band_proper_threshold(k, cp.t)) {
            v.proper = v.good = v.satisfactory = Tristate::yes;
            v.decided_by = DecidedBy::band_bound;
            return v;
        }
        if (cp.m >= 1 && sufficient_proper_intervals(k, cp.m, cp.t).contains(n)) {
            v.proper = v.good = v.satisfactory = Tristate::yes;
            v.decided_by = DecidedBy::edge_interval;
            return v;
        }
        for (const auto& [w, a] : dist.counts) {
            if (w == d) continue;
            if (term_beats_bound(a, w, n, k)) {
                v.proper = v.good = v.satisfactory = Tristate::no;
                v.ugly_witness_weight = w;
                v.decided_by = DecidedBy::weight_term_bound;
                return v;
            }
        }
        if (cp.t >= 2) {
            bool lifted = false;
            if (opts.cached_skip_proper) {
                for (long long u = 1; u < cp.t && !lifted; ++u) {
                    const auto hit = opts.cached_skip_proper(n - pow2ll(k - 1) * u);
                    if (hit.has_value() && *hit) lifted = true;
                }
            }
            if (!lifted && cp.m >= 1)
                lifted = is_proper(pue_of(k, cp.n_prime), true, opts.budget) == Tristate::yes;
            if (lifted) {
                v.proper = v.good = v.satisfactory = Tristate::yes;
                v.decided_by = DecidedBy::copy_lifting;
                return v;
            }
        }
    }

    v.proper = is_proper(ue, false, opts.budget);
    if (v.proper == Tristate::yes) {
        v.good = v.satisfactory = Tristate::yes;
        v.decided_by = DecidedBy::root_isolation;
        return v;
    }
    v.good = is_good(ue, opts.budget);
    v.satisfactory = is_satisfactory(ue, opts.budget);
    // P(1/2) < 2^{k-n}, so good implies satisfactory; repair budget gaps
    // that the exact engines left open.
    if (v.good == Tristate::yes && v.satisfactory == Tristate::unknown)
        v.satisfactory = Tristate::yes;
    if (v.satisfactory == Tristate::no && v.good == Tristate::unknown) v.good = Tristate::no;
    v.decided_by = v.proper != Tristate::unknown ? DecidedBy::root_isolation : DecidedBy::oracle;
    return v;
}

}  // namespace simplexdet
