#include "simplexdet/uepoly.hpp"

#include <stdexcept>

#include "simplexdet/errors.hpp"

namespace simplexdet {

namespace {

// Exact evaluation keeps every power of p as a rational, so the bit size of
// the result grows like n * bits(denominator). Cap n to keep that sane.
constexpr long long kMaxExactLength = 1LL << 22;

void require_prob(const Rat& p) {
    if (p < 0 || p > Rat(1, 2)) {
        throw std::invalid_argument("uepoly: p must lie in [0, 1/2]");
    }
}

}  // namespace

UePolynomial pue_from(const WeightDistribution& dist) {
    UePolynomial ue;
    ue.k = dist.k;
    ue.n = dist.n;
    Int total = 0;
    long long prev = 0;
    for (const auto& [w, count] : dist.counts) {
        if (w < 1 || w > dist.n) {
            throw invariant_violation("uepoly: weight out of range");
        }
        if (w <= prev || count <= 0) {
            throw invariant_violation("uepoly: malformed distribution");
        }
        ue.terms.emplace_back(w, count);
        total += count;
        prev = w;
    }
    if (total != pow2(dist.k) - 1) {
        throw invariant_violation("uepoly: counts do not sum to 2^k - 1");
    }
    return ue;
}

UePolynomial pue_of(int k, long long n) { return pue_from(weight_distribution(k, n)); }

Rat evaluate(const UePolynomial& ue, const Rat& p) {
    require_prob(p);
    if (ue.n > kMaxExactLength) {
        throw std::invalid_argument("uepoly: code too long for exact evaluation");
    }
    Rat sum = 0;
    for (const auto& [w, count] : ue.terms) {
        sum += Rat(count) * pow_p_q(p, w, ue.n - w);
    }
    return sum;
}

Rat evaluate_dual(const UePolynomial& ue, const Rat& p) {
    require_prob(p);
    if (ue.n > kMaxExactLength) {
        throw std::invalid_argument("uepoly: code too long for exact evaluation");
    }
    Rat z = 1 - 2 * p;
    Rat sum = 1;
    for (const auto& [w, count] : ue.terms) {
        sum += Rat(count) * pow_rat(z, w);
    }
    Rat q = 1 - p;
    return sum / Rat(pow2(ue.k)) - pow_rat(q, ue.n);
}

Rat value_at_half(const UePolynomial& ue) { return Rat(pow2(ue.k) - 1) / Rat(pow2(ue.n)); }

Rat satisfactory_bound(int k, long long n) {
    if (n <= k) throw std::invalid_argument("satisfactory_bound: need n > k");
    return Rat(1) / Rat(pow2(n - k));
}

}  // namespace simplexdet
