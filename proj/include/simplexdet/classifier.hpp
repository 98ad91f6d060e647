/*
 * Classification of the punctured codes as proper / good / satisfactory,
 * with cheap sufficient criteria tried before exact root analysis.
 *
 * Decision cascade, in order:
 *   boundary_distribution  every weight is at least n/2, so every term of
 *                          P is increasing on [0,1/2]
 *   band_bound             narrow bands (large m) are proper in full
 *   edge_interval          two sufficient intervals anchored at the band
 *                          edges, from the all-terms-increasing argument
 *   min_term_bound         the minimum-weight term alone beats the
 *                          satisfactory bound at its peak p = d/n, so the
 *                          code fails every criterion
 *   weight_term_bound      the same bound applied at another weight
 *   copy_lifting           properness of the first-row-skipping variant at
 *                          a shorter same-residual length lifts to every
 *                          half-block extension
 *   root_isolation         exact nonnegativity analysis of the derivative
 *   oracle                 exact ratio-maximum comparison decided good or
 *                          satisfactory while properness stayed open
 *
 * Properness of the dual code is decided through the (1-2p)-substitution
 * derivative: with z = 1-2p and psi(z) = sum A_w w z^{w-1}, the dual
 * probability increases on [0,1/2] exactly when
 * psi(z)/(1+z)^{n-1} <= n 2^{k-n} on (0,1). Dual satisfactoriness equals
 * primal satisfactoriness. Dual goodness is reported only when it follows
 * from the implication chain, otherwise it stays unknown.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "simplexdet/bigint.hpp"
#include "simplexdet/densepoly.hpp"
#include "simplexdet/sparsepoly.hpp"
#include "simplexdet/uepoly.hpp"

namespace simplexdet {

enum class Tristate { no = 0, yes = 1, unknown = 2 };

enum class DecidedBy {
    boundary_distribution,
    band_bound,
    edge_interval,
    min_term_bound,
    weight_term_bound,
    copy_lifting,
    root_isolation,
    oracle,
};

const char* to_string(Tristate v);
const char* to_string(DecidedBy v);

struct Verdict {
    int k = 0;
    long long n = 0;
    bool dual = false;
    Tristate proper = Tristate::unknown;
    Tristate good = Tristate::unknown;
    Tristate satisfactory = Tristate::unknown;
    bool ugly_by_min_term = false;
    std::optional<long long> ugly_witness_weight;
    DecidedBy decided_by = DecidedBy::oracle;
};

// Dense integer polynomial Q with
//     dP/dp = p^{d-1} (1-p)^{n-W-1} Q(p),
// where d and W are the minimum and maximum weights. Q(0) = A_d d and
// deg Q <= W - d + 1. Intended for moderate W - d only; the sparse form
// from properness_polynomial carries the same sign information at scale.
DensePoly derivative_polynomial(const UePolynomial& ue);

// Is P (optionally with the first-row codeword's term removed) nondecreasing
// on [0,1/2]? Certified exactly; unknown only when every route exhausts its
// budget.
Tristate is_proper(const UePolynomial& ue, bool skip_first_row = false,
                   const EngineBudget& budget = {});

// Exact maximum comparisons over p in (0,1/2]: good compares against
// P(1/2), satisfactory against 2^{k-n}.
Tristate is_good(const UePolynomial& ue, const EngineBudget& budget = {});
Tristate is_satisfactory(const UePolynomial& ue, const EngineBudget& budget = {});

// Properness of the dual code via the (1-2p)-form derivative criterion.
Tristate is_proper_dual(const UePolynomial& ue, const EngineBudget& budget = {});

// Does the weight-w term alone exceed the satisfactory bound at p = w/n,
// i.e. A_w w^w (n-w)^{n-w} 2^{n-k} > n^n? Certified-log filter with exact
// big-integer fallback. ugly_by_min_term applies it at w = d.
bool ugly_by_min_term(int k, long long n);
bool ugly_by_weight(int k, long long n, long long w);

// The two sufficient-properness intervals of band m for t half-blocks,
// with exact integer-square-root floors. Either interval may be a single
// point; lo2 > hi2 marks the second one empty.
struct ProperIntervals {
    long long lo1 = 0, hi1 = -1;
    long long lo2 = 0, hi2 = -1;
    bool contains(long long n) const {
        return (lo1 <= n && n <= hi1) || (lo2 <= n && n <= hi2);
    }
};
ProperIntervals sufficient_proper_intervals(int k, int m, long long t);

// Minimal band index m for which the whole band [edge(m), edge(m+1)] is
// proper at t half-blocks; every narrower band (larger m) is then proper
// too.
int full_band_proper_threshold(int k, long long t);

struct ClassifyOptions {
    EngineBudget budget;
    bool dual = false;
    bool shortcuts = true;  // disable to force the engine routes (testing)
    // Optional cache lookup: skip-variant properness of the same-k code of
    // length n0 < n in the same residual class. Returning a value short
    // circuits the lifting stage.
    std::function<std::optional<bool>(long long n0)> cached_skip_proper;
};

Verdict classify(int k, long long n, const ClassifyOptions& opts = {});

}  // namespace simplexdet
