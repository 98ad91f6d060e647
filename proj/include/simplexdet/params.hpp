/*
 * Canonical decomposition of a code length.
 *
 * For dimension k and length n >= 2^{k-1}, write
 *
 *     n = 2^{k-1} (t - 1) + n'   with   n' in [2^{k-1}, 2^k - 1].
 *
 * t counts how many full half-length blocks the generator starts with
 * (t - 1 prepended copies plus the copy inside the residual prefix).
 * The residual length n' falls into exactly one band
 *
 *     2^k - 2^{k-m} < n' <= 2^k - 2^{k-m-1},   1 <= m <= k - 1,
 *
 * except for n' = 2^{k-1} itself (the first-order Reed-Muller
 * boundary), reported as m = 0.
 */
#pragma once

#include <cstdint>

namespace simplexdet {

struct CodeParams {
    int k = 0;
    long long n = 0;
    long long t = 0;
    long long n_prime = 0;
    int m = 0;  // band index of n_prime; 0 only when n_prime == 2^{k-1}
};

// Throws std::invalid_argument unless 2 <= k <= 62 and 2^{k-1} <= n < 2^62.
CodeParams decompose(int k, long long n);

// Band index of a residual length n' in (2^{k-1}, 2^k - 1]; 0 for n' == 2^{k-1}.
int band_index(int k, long long n_prime);

// Band midpoint 2^k - 3*2^{k-m-2}, the interior optimum of the band.
long long band_midpoint(int k, int m);

}  // namespace simplexdet
