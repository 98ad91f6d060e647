/*
 * Certified real arithmetic: intervals with MPFR endpoints.
 *
 * A CReal holds an enclosure [lo, hi] of an exact real value. Every
 * operation rounds the lower endpoint down and the upper endpoint up,
 * so enclosures stay valid through arbitrary expression trees. Sign
 * and comparison queries answer only when the enclosures decide them;
 * callers that get an undecided answer are expected to recompute at
 * higher precision (all constructors take an explicit precision).
 */
#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "simplexdet/bigint.hpp"

namespace simplexdet {

class CReal {
  public:
    explicit CReal(mpfr_prec_t prec = 128);
    CReal(const CReal& o);
    CReal(CReal&& o) noexcept;
    CReal& operator=(const CReal& o);
    CReal& operator=(CReal&& o) noexcept;
    ~CReal();

    static CReal from_long(long v, mpfr_prec_t prec);
    static CReal from_int(const Int& v, mpfr_prec_t prec);
    static CReal from_rat(const Rat& v, mpfr_prec_t prec);
    static CReal const_ln2(mpfr_prec_t prec);
    static CReal const_pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }

    CReal operator+(const CReal& o) const;
    CReal operator-(const CReal& o) const;
    CReal operator*(const CReal& o) const;
    CReal operator/(const CReal& o) const;  // throws std::domain_error if o straddles 0
    CReal operator-() const;

    CReal pow_ui(unsigned long e) const;
    CReal pow_int(const Int& e) const;  // requires a positive enclosure for even handling
    CReal log2() const;                 // requires lo > 0
    CReal ln() const;                   // requires lo > 0
    CReal exp2() const;
    CReal sqrt() const;  // requires lo >= 0
    CReal abs() const;

    bool strictly_positive() const;
    bool strictly_negative() const;
    bool contains_zero() const;

    // +1 if the whole enclosure lies above q, -1 if below, nullopt if q
    // falls inside.
    std::optional<int> compare_to(const Rat& q) const;
    std::optional<int> compare_to(const CReal& o) const;

    // True when both endpoints are finite numbers.
    bool finite() const;

    double midpoint_double() const;
    // Exact rational midpoint of the enclosure; endpoints are dyadic.
    Rat midpoint_rat() const;
    double width_double() const;
    std::string decimal(int significant_digits) const;

    // Enclosure construction helpers used by the evaluation engines.
    static CReal hull(const CReal& a, const CReal& b);

  private:
    void init(mpfr_prec_t prec);

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

}  // namespace simplexdet
