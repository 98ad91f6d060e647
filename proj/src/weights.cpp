#include "simplexdet/weights.hpp"

#include <bit>
#include <stdexcept>

#include "simplexdet/errors.hpp"

namespace simplexdet {

std::vector<int> alpha_vector(int k, long long n_prime) {
    const int m = band_index(k, n_prime);  // validates the range
    std::vector<int> alpha(k, 0);
    if (m == 0) {
        // Last column of the half-length block is all ones.
        alpha.assign(k, 1);
        return alpha;
    }
    alpha[m] = 1;  // alpha_{m+1}
    // alpha_{m+2} .. alpha_k spell n' - 1 - 2^k + 2^{k-m} in binary,
    // least significant bit in alpha_k.
    long long rem = n_prime - 1 - (1LL << k) + (1LL << (k - m));
    for (int i = 0; i <= k - m - 2; ++i) {
        alpha[k - 1 - i] = (int)(rem & 1);
        rem >>= 1;
    }
    if (rem != 0) throw invariant_violation("alpha_vector: residual bits out of band");
    return alpha;
}

std::vector<long long> row_weights(int k, long long n_prime) {
    const int m = band_index(k, n_prime);
    std::vector<long long> w(k, 0);
    if (m == 0) {
        w[0] = n_prime;
        for (int i = 1; i < k; ++i) w[i] = 1LL << (k - 2);
        return w;
    }
    const auto alpha = alpha_vector(k, n_prime);

    // Floor route.
    for (int i = 1; i <= m; ++i) w[i - 1] = 1LL << (k - 1);
    w[m] = n_prime - (1LL << (k - 1)) + (1LL << (k - m - 1));
    for (int i = m + 2; i <= k; ++i) {
        const long long dbl = (n_prime - 1) >> (k - i + 1);  // full double blocks in row i
        if (alpha[i - 1] == 0)
            w[i - 1] = dbl << (k - i);
        else
            w[i - 1] = n_prime - (dbl << (k - i)) - (1LL << (k - i));
    }

    // Partial-sum route over the last-column bits.
    const long long base = (1LL << (k - 1)) - (1LL << (k - m - 1));
    long long tail = 0;  // sum_{j=m+2}^{k} alpha_j 2^{k-j}
    for (int j = m + 2; j <= k; ++j)
        if (alpha[j - 1]) tail += 1LL << (k - j);
    if (w[m] != base + 1 + tail)
        throw invariant_violation("row_weights: the two w_{m+1} routes disagree");
    long long prefix = 0;  // sum_{j=m+2}^{i-1} alpha_j 2^{k-1-j}
    long long suffix = tail;
    for (int i = m + 2; i <= k; ++i) {
        suffix -= alpha[i - 1] ? (1LL << (k - i)) : 0;
        const long long alt = alpha[i - 1] == 0 ? base + prefix : base + 1 + prefix + suffix;
        if (w[i - 1] != alt) throw invariant_violation("row_weights: the two w_i routes disagree");
        if (alpha[i - 1]) prefix += 1LL << (k - 1 - i);
    }
    return w;
}

Int WeightDistribution::total() const {
    Int s = 0;
    for (const auto& [w, c] : counts) s += c;
    return s;
}

WeightDistribution weight_distribution(int k, long long n) {
    const CodeParams p = decompose(k, n);
    WeightDistribution dist;
    dist.k = k;
    dist.n = n;
    const long long shift_other = (p.t - 1) << (k - 2);
    const long long shift_first = (p.t - 1) << (k - 1);
    auto& c = dist.counts;
    if (p.m == 0) {
        c[p.n_prime + shift_first] += 1;
        c[(1LL << (k - 2)) + shift_other] += pow2(k) - 2;
    } else {
        const auto w = row_weights(k, p.n_prime);
        c[(1LL << (k - 1)) + shift_first] += 1;
        if (p.m >= 2) c[(1LL << (k - 1)) + shift_other] += pow2(p.m) - 2;
        c[w[p.m] + shift_other] += pow2(p.m);
        for (int i = p.m + 2; i <= k; ++i) {
            c[w[i - 1] + shift_other] += pow2(i - 2);
            c[p.n_prime - w[i - 1] + shift_other] += pow2(i - 2);
        }
    }
    if (dist.total() != pow2(k) - 1)
        throw invariant_violation("weight_distribution: multiplicities do not sum to 2^k - 1");
    return dist;
}

MinWeight min_weight_term(int k, long long n) {
    const WeightDistribution dist = weight_distribution(k, n);
    return MinWeight{dist.min_weight(), dist.count_at_min()};
}

WeightDistribution brute_force_distribution(const BinaryMatrix& g) {
    if (g.rows() > 24)
        throw std::invalid_argument("brute_force_distribution: limited to 24 rows");
    WeightDistribution dist;
    dist.k = (int)g.rows();
    dist.n = (long long)g.cols();

    const std::size_t words = (g.cols() + 63) / 64;
    std::vector<std::uint64_t> rows(g.rows() * words, 0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (g.get(r, c)) rows[r * words + c / 64] |= std::uint64_t(1) << (c % 64);

    std::vector<std::uint64_t> acc(words, 0);
    const std::uint64_t end = std::uint64_t(1) << g.rows();
    for (std::uint64_t i = 1; i < end; ++i) {
        const unsigned flip = std::countr_zero(i);  // Gray-code step
        std::size_t w = 0;
        for (std::size_t j = 0; j < words; ++j) {
            acc[j] ^= rows[flip * words + j];
            w += std::popcount(acc[j]);
        }
        dist.counts[(long long)w] += 1;
    }
    if (dist.counts.count(0)) {
        // Rank-deficient generator: some row combinations vanish.
        dist.counts.erase(0);
    }
    return dist;
}

}  // namespace simplexdet
