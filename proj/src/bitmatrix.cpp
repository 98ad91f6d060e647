#include "simplexdet/bitmatrix.hpp"

#include <bit>
#include <stdexcept>

namespace simplexdet {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("BinaryMatrix: empty dimensions");
    bits_.assign(rows_ * words_per_row_, 0);
}

void BinaryMatrix::check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("BinaryMatrix: index out of range");
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
    check(r, c);
    return (bits_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool v) {
    check(r, c);
    std::uint64_t& w = bits_[r * words_per_row_ + c / 64];
    const std::uint64_t m = std::uint64_t(1) << (c % 64);
    if (v)
        w |= m;
    else
        w &= ~m;
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const {
    check(r, 0);
    std::size_t w = 0;
    for (std::size_t i = 0; i < words_per_row_; ++i)
        w += std::popcount(bits_[r * words_per_row_ + i]);
    return w;
}

std::size_t BinaryMatrix::combination_weight(std::uint64_t mask) const {
    if (rows_ > 64) throw std::out_of_range("combination_weight: more than 64 rows");
    std::size_t w = 0;
    for (std::size_t j = 0; j < words_per_row_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t r = 0; r < rows_; ++r)
            if ((mask >> r) & 1u) acc ^= bits_[r * words_per_row_ + j];
        w += std::popcount(acc);
    }
    return w;
}

std::uint64_t BinaryMatrix::column_value(std::size_t c) const {
    if (rows_ > 64) throw std::out_of_range("column_value: more than 64 rows");
    check(0, c);
    std::uint64_t v = 0;
    for (std::size_t r = 0; r < rows_; ++r) v = (v << 1) | (get(r, c) ? 1u : 0u);
    return v;
}

BinaryMatrix BinaryMatrix::with_row_added(std::size_t dst, std::size_t src) const {
    check(dst, 0);
    check(src, 0);
    BinaryMatrix r(*this);
    for (std::size_t j = 0; j < words_per_row_; ++j)
        r.bits_[dst * words_per_row_ + j] ^= r.bits_[src * words_per_row_ + j];
    return r;
}

std::string BinaryMatrix::to_text() const {
    std::string out;
    out.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::size_t BinaryMatrix::rank() const {
    std::vector<std::uint64_t> work(bits_);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        const std::size_t word = c / 64;
        const std::uint64_t mask = std::uint64_t(1) << (c % 64);
        std::size_t pivot = rows_;
        for (std::size_t r = rank; r < rows_; ++r) {
            if (work[r * words_per_row_ + word] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows_) continue;
        for (std::size_t j = 0; j < words_per_row_; ++j)
            std::swap(work[rank * words_per_row_ + j], work[pivot * words_per_row_ + j]);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != rank && (work[r * words_per_row_ + word] & mask)) {
                for (std::size_t j = 0; j < words_per_row_; ++j)
                    work[r * words_per_row_ + j] ^= work[rank * words_per_row_ + j];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace simplexdet
