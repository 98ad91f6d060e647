/*
 * Exact arithmetic helpers on top of GMP.
 *
 * Int is an arbitrary-precision integer, Rat an exact rational. All
 * verdict-relevant computations in this library run on these types;
 * floating point only appears at output boundaries or inside the
 * certified interval type (certified.hpp), which carries its own
 * error bounds.
 */
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace simplexdet {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructor on this platform; long is 64-bit.
inline Int int_from(long long v) { return Int(static_cast<long>(v)); }

// 2^e for e >= 0.
inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Exact x^e for e >= 0.
inline Rat pow_rat(const Rat& x, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

// Exact p^a * (1-p)^b for rational p.
inline Rat pow_p_q(const Rat& p, unsigned long a, unsigned long b) {
    Rat pa, qb;
    mpz_pow_ui(pa.get_num_mpz_t(), p.get_num().get_mpz_t(), a);
    mpz_pow_ui(pa.get_den_mpz_t(), p.get_den().get_mpz_t(), a);
    pa.canonicalize();
    Rat q = 1 - p;
    mpz_pow_ui(qb.get_num_mpz_t(), q.get_num().get_mpz_t(), b);
    mpz_pow_ui(qb.get_den_mpz_t(), q.get_den().get_mpz_t(), b);
    qb.canonicalize();
    return pa * qb;
}

inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Number of bits in |v|, i.e. floor(log2 v) + 1 for v > 0. Returns 0 for v = 0.
inline unsigned long bit_length(const Int& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

}  // namespace simplexdet
