#include "simplexdet/certified.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace simplexdet {

void CReal::init(mpfr_prec_t prec) {
    prec_ = prec;
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

CReal::CReal(mpfr_prec_t prec) {
    init(prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

CReal::CReal(const CReal& o) {
    init(o.prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CReal::CReal(CReal&& o) noexcept : prec_(o.prec_) {
    lo_[0] = o.lo_[0];
    hi_[0] = o.hi_[0];
    mpfr_init2(o.lo_, MPFR_PREC_MIN);
    mpfr_init2(o.hi_, MPFR_PREC_MIN);
}

CReal& CReal::operator=(const CReal& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

CReal& CReal::operator=(CReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
    }
    return *this;
}

CReal::~CReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

CReal CReal::from_long(long v, mpfr_prec_t prec) {
    CReal r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

CReal CReal::from_int(const Int& v, mpfr_prec_t prec) {
    CReal r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

CReal CReal::from_rat(const Rat& v, mpfr_prec_t prec) {
    CReal r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

CReal CReal::const_ln2(mpfr_prec_t prec) {
    CReal r(prec);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

CReal CReal::const_pi(mpfr_prec_t prec) {
    CReal r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

CReal CReal::operator+(const CReal& o) const {
    CReal r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

CReal CReal::operator-(const CReal& o) const {
    CReal r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

CReal CReal::operator-() const {
    CReal r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

CReal CReal::operator*(const CReal& o) const {
    CReal r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr as[2] = {lo_, hi_};
    const mpfr_srcptr bs[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto a : as)
        for (auto b : bs) {
            mpfr_mul(t, a, b, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a, b, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

CReal CReal::operator/(const CReal& o) const {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
        throw std::domain_error("CReal: division by an interval containing zero");
    CReal r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr as[2] = {lo_, hi_};
    const mpfr_srcptr bs[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto a : as)
        for (auto b : bs) {
            mpfr_div(t, a, b, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, a, b, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

CReal CReal::pow_ui(unsigned long e) const {
    CReal r(prec_);
    if (e % 2 == 1 || mpfr_sgn(lo_) >= 0) {
        mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
        return r;
    }
    // Even power of an interval reaching below zero: range is [m^e, M^e]
    // with m the distance to zero and M the larger magnitude.
    mpfr_t am, bm;
    mpfr_init2(am, prec_);
    mpfr_init2(bm, prec_);
    mpfr_abs(am, lo_, MPFR_RNDU);
    mpfr_abs(bm, hi_, MPFR_RNDU);
    if (mpfr_cmp(am, bm) < 0) mpfr_swap(am, bm);
    if (mpfr_sgn(hi_) >= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_abs(bm, hi_, MPFR_RNDD);
        mpfr_pow_ui(r.lo_, bm, e, MPFR_RNDD);
    }
    mpfr_pow_ui(r.hi_, am, e, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(bm);
    return r;
}

CReal CReal::pow_int(const Int& e) const {
    if (e < 0) throw std::invalid_argument("CReal::pow_int: negative exponent");
    if (mpfr_sgn(lo_) < 0) throw std::invalid_argument("CReal::pow_int: base must be nonnegative");
    CReal r(prec_);
    mpfr_pow_z(r.lo_, lo_, e.get_mpz_t(), MPFR_RNDD);
    mpfr_pow_z(r.hi_, hi_, e.get_mpz_t(), MPFR_RNDU);
    return r;
}

CReal CReal::log2() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("CReal::log2: requires a positive enclosure");
    CReal r(prec_);
    mpfr_log2(r.lo_, lo_, MPFR_RNDD);
    mpfr_log2(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CReal CReal::ln() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("CReal::ln: requires a positive enclosure");
    CReal r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CReal CReal::exp2() const {
    CReal r(prec_);
    mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CReal CReal::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("CReal::sqrt: requires a nonnegative enclosure");
    CReal r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CReal CReal::abs() const {
    CReal r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    mpfr_abs(r.hi_, lo_, MPFR_RNDU);
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_abs(t, hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_set_zero(r.lo_, 1);
    return r;
}

bool CReal::strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool CReal::strictly_negative() const { return mpfr_sgn(hi_) < 0; }
bool CReal::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

std::optional<int> CReal::compare_to(const Rat& q) const {
    if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
    if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
    return std::nullopt;
}

std::optional<int> CReal::compare_to(const CReal& o) const {
    if (mpfr_cmp(hi_, o.lo_) < 0) return -1;
    if (mpfr_cmp(lo_, o.hi_) > 0) return 1;
    return std::nullopt;
}

bool CReal::finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

double CReal::midpoint_double() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

Rat CReal::midpoint_rat() const {
    if (!finite()) throw std::domain_error("midpoint_rat: enclosure not finite");
    Rat lo, hi;
    mpfr_get_q(lo.get_mpq_t(), lo_);
    mpfr_get_q(hi.get_mpq_t(), hi_);
    return (lo + hi) / 2;
}

double CReal::width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

std::string CReal::decimal(int significant_digits) const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::vector<char> buf(64 + significant_digits);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, m);
    mpfr_clear(m);
    return std::string(buf.data());
}

CReal CReal::hull(const CReal& a, const CReal& b) {
    CReal r(std::max(a.prec_, b.prec_));
    mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) <= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) >= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
    return r;
}

}  // namespace simplexdet
