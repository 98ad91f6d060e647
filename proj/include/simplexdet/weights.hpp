/*
 * Closed-form weight distributions.
 *
 * For a residual length n' in band m the k row weights of H_k(n') come
 * from two independent formula routes (a floor expression in n' and a
 * partial-sum expression in the last-column bits); row_weights computes
 * both and refuses to proceed if they ever disagree. The full
 * distribution follows from the row structure: sums within the first m
 * rows keep weight 2^{k-1}, sums containing row m+1 keep weight
 * w_{m+1}, and for each later row i half of the 2^{i-1} sums weigh w_i
 * and half weigh n' - w_i. Prepended half-length copies then add
 * 2^{k-1} per copy to the first row's own codeword and 2^{k-2} per copy
 * to every other nonzero codeword.
 */
#pragma once

#include <map>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/bitmatrix.hpp"
#include "simplexdet/params.hpp"

namespace simplexdet {

// Last column of H_k(n'), entry i-1 holding the bit in row i;
// 2^{k-1} <= n' <= 2^k - 1.
std::vector<int> alpha_vector(int k, long long n_prime);

// Weights of the k rows of H_k(n'); 2^{k-1} <= n' <= 2^k - 1.
std::vector<long long> row_weights(int k, long long n_prime);

struct WeightDistribution {
    int k = 0;
    long long n = 0;
    std::map<long long, Int> counts;  // weight -> multiplicity, weight 0 excluded

    long long min_weight() const { return counts.begin()->first; }
    long long max_weight() const { return counts.rbegin()->first; }
    const Int& count_at_min() const { return counts.begin()->second; }
    Int total() const;
};

// Distribution of the length-n code for any n >= 2^{k-1}.
WeightDistribution weight_distribution(int k, long long n);

// Minimum distance and its multiplicity, read off the assembled
// distribution.
struct MinWeight {
    long long d = 0;
    Int a_d;
};
MinWeight min_weight_term(int k, long long n);

// Exhaustive enumeration of all nonzero codeword weights of the code
// generated by g (Gray-code walk). Refuses matrices with more than 24
// rows.
WeightDistribution brute_force_distribution(const BinaryMatrix& g);

}  // namespace simplexdet
