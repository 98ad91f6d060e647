/*
 * Sign analysis of sparse integer polynomials on the open unit interval.
 *
 * Monotonicity of the undetected-error probability reduces, after the
 * substitution u = p/(1-p), to nonnegativity on (0,1) of
 *
 *     F(u) = sum_w A_w u^{w-d} (w - (n-w) u),
 *
 * an integer polynomial whose term count is twice the number of
 * distinct weights, however large the degree. The engine exploits
 * that: differentiating a polynomial with a nonzero constant term and
 * dividing out the resulting power of u loses exactly one term, so a
 * chain of at most #terms derivative steps ends in a monomial. Walking
 * the chain back up yields, per level, a set of disjoint "zones" that
 * cover all roots in (0,1) while the sign is locked and known between
 * zones. Queries then refine only the zones they care about.
 *
 * Every evaluation point is an exact rational (dyadic except for
 * endpoint 1). Signs come from interval arithmetic at doubling
 * precision with an exact big-integer fallback, so no sign is ever
 * guessed. Searches that cannot be decided within the configured
 * budget throw budget_exhausted rather than return a wrong answer.
 */
#pragma once

#include <mpfr.h>

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/uepoly.hpp"

namespace simplexdet {

struct SparsePoly {
    std::vector<long long> exps;  // strictly ascending, nonnegative
    std::vector<Int> coefs;       // nonzero, parallel to exps

    std::size_t terms() const { return exps.size(); }
    bool empty() const { return exps.empty(); }
    long long degree() const { return empty() ? -1 : exps.back(); }

    // Sorts, merges equal exponents, drops zero coefficients.
    static SparsePoly from_terms(std::vector<std::pair<long long, Int>> raw);

    // Exact value at a rational point.
    Rat value_at(const Rat& x) const;

    // Sum of the coefficients, the exact value at 1.
    Int value_at_one() const;
};

// d/du with the power of u at the origin divided out, so the result
// again has a nonzero constant term.
SparsePoly derivative_stripped(const SparsePoly& f);

// F(u) as above; with skip_first_row the codeword equal to the first
// generator row is excluded from the sum.
SparsePoly properness_polynomial(const UePolynomial& ue, bool skip_first_row = false);

// Numerator S of a ratio R = S/(1+x)^N; critical points of R are the
// roots of S'(x)(1+x) - N S(x).
SparsePoly ratio_critical_polynomial(const SparsePoly& s, long long n_power);

struct EngineBudget {
    int max_bisect_bits = 4096;        // finest dyadic grid 2^-max_bisect_bits
    long long max_evals = 20'000'000;  // certified sign evaluations
    mpfr_prec_t max_prec = 1 << 14;    // interval precision before exact fallback
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Exact sign (-1, 0, +1) of f at x > 0.
int sign_at(const SparsePoly& f, const Rat& x, const EngineBudget& budget = {});

// An open interval that may contain roots of f; f(a) and f(b) are
// nonzero with the recorded signs.
struct Zone {
    Rat a, b;                  // 0 < a < b < 1, f(a) and f(b) nonzero
    int sign_a = 0, sign_b = 0;
};

struct SignDecomposition {
    std::vector<Zone> zones;  // ascending, disjoint interiors, strictly
                              // inside (0,1); every root of f in (0,1) lies
                              // in a zone, so the sign is constant per gap
    int sign_near_zero = 0;   // sign of f(x) for small x > 0
    int sign_at_one = 0;      // exact sign of f(1), or the sign f approaches
                              // from inside when f(1) = 0
};

SignDecomposition decompose_signs(const SparsePoly& f, const EngineBudget& budget = {});

struct NonnegResult {
    bool nonneg = false;
    Rat witness;  // point with f(witness) < 0 when nonneg is false
};

// Is f >= 0 everywhere on (0,1)?
NonnegResult nonnegative_on_unit(const SparsePoly& f, const EngineBudget& budget = {});

struct MaxCompare {
    bool exceeds = false;
    Rat witness;  // point of (0,1] with S(x)/(1+x)^N > threshold when exceeds
};

// Does sup of S(x)/(1+x)^N over (0,1] exceed the threshold? S must have
// positive coefficients and no constant term. Attainment of the
// threshold itself does not count as exceeding.
MaxCompare ratio_max_exceeds(const SparsePoly& s, long long n_power, const Rat& threshold,
                             const EngineBudget& budget = {});

}  // namespace simplexdet
