#include "simplexdet/params.hpp"

#include <bit>
#include <stdexcept>

namespace simplexdet {

int band_index(int k, long long n_prime) {
    const long long half = 1LL << (k - 1);
    const long long full = 2 * half;
    if (n_prime < half || n_prime >= full)
        throw std::invalid_argument("band_index: residual length outside [2^{k-1}, 2^k - 1]");
    if (n_prime == half) return 0;
    // 2^{k-m-1} <= 2^k - n' < 2^{k-m}, so m = k - bitlength(2^k - n').
    const unsigned long long deficit = (unsigned long long)(full - n_prime);
    return k - (64 - std::countl_zero(deficit));
}

long long band_midpoint(int k, int m) {
    if (m < 1 || m > k - 2) throw std::invalid_argument("band_midpoint: need 1 <= m <= k - 2");
    return (1LL << k) - 3 * (1LL << (k - m - 2));
}

CodeParams decompose(int k, long long n) {
    if (k < 2 || k > 62) throw std::invalid_argument("decompose: need 2 <= k <= 62");
    const long long half = 1LL << (k - 1);
    if (n < half) throw std::invalid_argument("decompose: need n >= 2^{k-1}");
    if (n >= (1LL << 62)) throw std::invalid_argument("decompose: n too large");
    CodeParams p;
    p.k = k;
    p.n = n;
    p.t = n / half;  // places n' = n - 2^{k-1}(t-1) in [2^{k-1}, 2^k - 1]
    p.n_prime = n - half * (p.t - 1);
    p.m = band_index(k, p.n_prime);
    return p;
}

}  // namespace simplexdet
