/*
 * Bit-packed matrices over GF(2).
 *
 * Rows are stored as contiguous 64-bit words. Accessors are bounds
 * checked. Matrices are treated as immutable values once built: the
 * construction routines fill them through set() and afterwards all
 * mutation goes through copying operations such as with_row_added().
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace simplexdet {

class BinaryMatrix {
  public:
    BinaryMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);

    // Hamming weight of row r.
    std::size_t row_weight(std::size_t r) const;

    // Weight of the GF(2) sum of the rows selected by mask (bit i = row i).
    // Requires rows() <= 64.
    std::size_t combination_weight(std::uint64_t mask) const;

    // Column c read as an integer with row 0 contributing the most
    // significant bit. Requires rows() <= 64.
    std::uint64_t column_value(std::size_t c) const;

    // Copy with row src added (mod 2) into row dst.
    BinaryMatrix with_row_added(std::size_t dst, std::size_t src) const;

    // Rank over GF(2).
    std::size_t rank() const;

    bool operator==(const BinaryMatrix& o) const = default;

    // One line of '0'/'1' characters per row.
    std::string to_text() const;

  private:
    void check(std::size_t r, std::size_t c) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace simplexdet
