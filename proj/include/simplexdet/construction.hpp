/*
 * Generator matrix constructions for punctured simplex codes.
 *
 * The k x (2^k - 1) parent matrix H_k is the column-wise concatenation
 * of blocks H_k^{(m)} for m = k-1 down to 0. Block H_k^{(m)} is k x 2^m:
 * its first k-m-1 rows are zero, row k-m is all ones, and the last m
 * rows list the m-bit integers 0 .. 2^m - 1 in ascending order, most
 * significant bit on top. H_k(n) keeps the first n columns; lengths
 * beyond 2^k - 1 prepend extra copies of the half-length block.
 *
 * The countdown matrix D(k, n) lists the k-bit values 2^k - 1 down to
 * 2^k - n as columns, most significant bit in row 0. The two families
 * generate identical codes up to a column permutation after one row
 * operation, which check_code_equality verifies constructively.
 */
#pragma once

#include "simplexdet/bitmatrix.hpp"

namespace simplexdet {

// Block H_k^{(m)}; 0 <= m <= k - 1.
BinaryMatrix build_block(int k, int m);

// First n columns of H_k; 1 <= n <= 2^k - 1.
BinaryMatrix build_hk_prefix(int k, long long n);

// Generator for any n >= 2^{k-1}: (t - 1) copies of H_k^{(k-1)}
// followed by H_k(n').
BinaryMatrix build_generalized(int k, long long n);

// Countdown generator; 1 <= n <= 2^k - 1.
BinaryMatrix build_countdown(int k, long long n);

// Adds the band's pivot row to all rows below it in H_k(n) and compares
// the resulting column multiset with the countdown columns; also checks
// that both matrices have full rank k when n >= 2^{k-1}.
bool check_code_equality(int k, long long n);

}  // namespace simplexdet
