/*
 * Undetected-error probability on the binary symmetric channel.
 *
 * For a code with weight distribution {A_w} the probability that a
 * channel error lands exactly on a nonzero codeword is
 *
 *     P(p) = sum_w A_w p^w (1-p)^{n-w}.
 *
 * The dual code's probability follows from the distribution identity
 *
 *     P_dual(p) = 2^{-k} (1 + sum_w A_w (1-2p)^w) - (1-p)^n.
 *
 * Both forms are evaluated exactly over the rationals.
 */
#pragma once

#include <utility>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/weights.hpp"

namespace simplexdet {

struct UePolynomial {
    int k = 0;
    long long n = 0;
    std::vector<std::pair<long long, Int>> terms;  // (weight, count), strictly ascending weights
};

// Builds and validates the term list from a distribution.
UePolynomial pue_from(const WeightDistribution& dist);
UePolynomial pue_of(int k, long long n);

// Exact value of sum A_w p^w (1-p)^{n-w}. Refuses very long codes where
// exact powers would be enormous.
Rat evaluate(const UePolynomial& ue, const Rat& p);

// Exact undetected-error probability of the dual code at p.
Rat evaluate_dual(const UePolynomial& ue, const Rat& p);

// P(1/2) = (2^k - 1) 2^{-n}.
Rat value_at_half(const UePolynomial& ue);

// 2^{k-n}, the bound a satisfactory code must respect.
Rat satisfactory_bound(int k, long long n);

}  // namespace simplexdet
