#include "simplexdet/construction.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "simplexdet/params.hpp"

namespace simplexdet {

namespace {

void require_k(int k) {
    if (k < 1 || k > 40) throw std::invalid_argument("construction: need 1 <= k <= 40");
}

// Writes block H_k^{(m)} into dst starting at column c0, returns one past
// its last column.
long long emit_block(BinaryMatrix& dst, int k, int m, long long c0, long long limit) {
    const long long width = 1LL << m;
    for (long long j = 0; j < width && c0 + j < limit; ++j) {
        const long long c = c0 + j;
        dst.set(k - m - 1, c, true);
        for (int b = 0; b < m; ++b) dst.set(k - m + b, c, (j >> (m - 1 - b)) & 1);
    }
    return std::min(c0 + width, limit);
}

}  // namespace

BinaryMatrix build_block(int k, int m) {
    require_k(k);
    if (m < 0 || m > k - 1) throw std::invalid_argument("build_block: need 0 <= m <= k - 1");
    BinaryMatrix h(k, 1LL << m);
    emit_block(h, k, m, 0, 1LL << m);
    return h;
}

BinaryMatrix build_hk_prefix(int k, long long n) {
    require_k(k);
    if (n < 1 || n > (1LL << k) - 1)
        throw std::invalid_argument("build_hk_prefix: need 1 <= n <= 2^k - 1");
    BinaryMatrix h(k, n);
    long long c = 0;
    for (int m = k - 1; m >= 0 && c < n; --m) c = emit_block(h, k, m, c, n);
    return h;
}

BinaryMatrix build_generalized(int k, long long n) {
    require_k(k);
    if (k < 2) throw std::invalid_argument("build_generalized: need k >= 2");
    const CodeParams p = decompose(k, n);
    if (n > (1LL << 26)) throw std::invalid_argument("build_generalized: matrix too large");
    BinaryMatrix h(k, n);
    long long c = 0;
    for (long long copy = 0; copy + 1 < p.t; ++copy) c = emit_block(h, k, k - 1, c, n);
    for (int m = k - 1; m >= 0 && c < n; --m) c = emit_block(h, k, m, c, n);
    return h;
}

BinaryMatrix build_countdown(int k, long long n) {
    require_k(k);
    if (n < 1 || n > (1LL << k) - 1)
        throw std::invalid_argument("build_countdown: need 1 <= n <= 2^k - 1");
    BinaryMatrix d(k, n);
    const long long top = (1LL << k) - 1;
    for (long long j = 0; j < n; ++j) {
        const long long v = top - j;
        for (int b = 0; b < k; ++b) d.set(b, j, (v >> (k - 1 - b)) & 1);
    }
    return d;
}

bool check_code_equality(int k, long long n) {
    require_k(k);
    if (n < 1 || n > (1LL << k) - 1)
        throw std::invalid_argument("check_code_equality: need 1 <= n <= 2^k - 1");
    BinaryMatrix s = build_hk_prefix(k, n);
    const BinaryMatrix d = build_countdown(k, n);

    // The last column of H_k(n) lands in block k-m-1; row m+1 is that
    // block's all-one row (row 1 when n <= 2^{k-1}). Adding it to every
    // row below reverses the incomplete block's columns so the multiset
    // matches the countdown columns.
    const long long full = 1LL << k;
    int m = 0;
    if (2 * n > full) m = band_index(k, n);
    for (int i = m + 1; i < k; ++i) s = s.with_row_added(i, m);

    std::vector<std::uint64_t> sc(n), dc(n);
    for (long long j = 0; j < n; ++j) {
        sc[j] = s.column_value(j);
        dc[j] = d.column_value(j);
    }
    std::sort(sc.begin(), sc.end());
    std::sort(dc.begin(), dc.end());
    if (sc != dc) return false;

    const std::size_t rs = build_hk_prefix(k, n).rank();
    const std::size_t rd = d.rank();
    if (rs != rd) return false;
    if (2 * n >= full && rs != (std::size_t)k) return false;
    return true;
}

}  // namespace simplexdet
