/*
 * Asymptotic thresholds: certified entropy series, per-band least
 * firing dimension with closed-form brackets, firing intervals around
 * band optima, census counts, and copy-count thresholds.
 */
#include "simplexdet/asymptotics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "simplexdet/classifier.hpp"
#include "simplexdet/errors.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/uepoly.hpp"

namespace simplexdet {
namespace {

// Thrown internally when an enclosure is too wide to decide a
// comparison; the retry loop recomputes everything at higher precision.
struct undecided {};

template <typename F>
auto with_precision(mpfr_prec_t start, mpfr_prec_t cap, const char* what, F&& f)
    -> decltype(f(start)) {
    for (mpfr_prec_t p = start; p <= cap; p *= 2) {
        try {
            return f(p);
        } catch (const undecided&) {
        } catch (const std::domain_error&) {
        }
    }
    throw budget_exhausted(std::string(what) + ": certified precision cap reached");
}

int demand_sign(const CReal& x) {
    if (x.strictly_positive()) return 1;
    if (x.strictly_negative()) return -1;
    throw undecided{};
}

int demand_cmp(const CReal& x, const Rat& q) {
    const std::optional<int> c = x.compare_to(q);
    if (!c) throw undecided{};
    return *c;
}

int demand_cmp(const CReal& x, const CReal& y) {
    const std::optional<int> c = x.compare_to(y);
    if (!c) throw undecided{};
    return *c;
}

void require(bool ok, const char* what) {
    if (!ok) throw invariant_violation(what);
}

// Sum of y^{2i} / (2i (2i-1)) over i >= 1, so that h(x) = 1 - sum/ln2
// for y = |1-2x|. The loop stops once the geometric tail bound
// y^{2i+2} / ((2i+2)(2i+1)(1-y^2)) drops below 2^-p and folds that
// bound into the enclosure.
CReal entropy_defect(const Rat& y, mpfr_prec_t p) {
    const CReal yv = CReal::from_rat(y, p);
    const CReal y2 = yv * yv;
    const CReal one = CReal::from_long(1, p);
    CReal sum = CReal::from_long(0, p);
    CReal ypow = y2;
    const Rat eps(Int(1), pow2(static_cast<unsigned long>(p)));
    for (long i = 1; i <= 400000; ++i) {
        sum = sum + ypow / CReal::from_long(2 * i * (2 * i - 1), p);
        ypow = ypow * y2;
        const CReal tail =
            ypow / (CReal::from_long((2 * i + 2) * (2 * i + 1), p) * (one - y2));
        if (tail.compare_to(eps) == std::optional<int>(-1))
            return sum + CReal::hull(CReal::from_long(0, p), tail);
    }
    throw budget_exhausted("entropy: series iteration cap reached");
}

// U_m = (2^{m+2} - 3) (1 - h(x)) at the band optimum, where
// 1 - 2x = 1 / (2^{m+2} - 3); computed without cancellation.
CReal entropy_gap(int m, mpfr_prec_t p) {
    const Int dd = pow2(static_cast<unsigned long>(m) + 2) - 3;
    return CReal::from_int(dd, p) * entropy_defect(Rat(Int(1), dd), p) /
           CReal::const_ln2(p);
}

// G(k) = (k - m) - 2^{k-m-2} U_m; the min-term bound fires at the
// band-m worst length exactly when G(k) < 0.
CReal g_value(const CReal& kv, int m, const CReal& U, mpfr_prec_t p) {
    return kv - CReal::from_long(m, p) -
           (kv - CReal::from_long(m + 2, p)).exp2() * U;
}

struct Estimates {
    CReal lo, hi;
};

// Closed-form bracket around the root of G in terms of
// mu = m + 5 + log2(ln 2).
Estimates root_estimates(int m, mpfr_prec_t p) {
    const CReal l2 = CReal::const_ln2(p);
    const CReal lambda = l2.log2();
    const CReal mu = CReal::from_long(m + 5, p) + lambda;
    const CReal lmu = mu.log2();
    const CReal rho = CReal::from_long(2 * m + 5, p) + lmu + lambda;
    Estimates e;
    e.hi = rho + lmu / (mu * l2);
    e.lo = e.hi - lmu * lmu / (CReal::from_long(2, p) * mu * mu * l2);
    return e;
}

template <typename F>
long long certified_ceil_ll(F&& make, mpfr_prec_t start, const char* what) {
    return with_precision(start, mpfr_prec_t(1) << 14, what,
                          [&](mpfr_prec_t p) -> long long {
        const CReal v = make(p);
        const Int c0 = ceil_rat(v.midpoint_rat());
        for (int d = -2; d <= 2; ++d) {
            const Int c = c0 + d;
            const Int cm1 = c - 1;
            if (v.compare_to(Rat(c)) == std::optional<int>(-1) &&
                v.compare_to(Rat(cm1)) == std::optional<int>(1)) {
                if (!c.fits_slong_p())
                    throw invariant_violation("certified ceiling out of machine range");
                return c.get_si();
            }
        }
        throw undecided{};
    });
}

// Closed-form reach of the firing run from the band edges:
// (k-m) ln2 + sqrt(...) toward the left edge, sqrt(...) - (k-m) ln2
// toward the right edge.
CReal gamma_reach(int k, int m, bool toward_right, mpfr_prec_t p) {
    const CReal l2 = CReal::const_ln2(p);
    const CReal km = CReal::from_long(k - m, p);
    const long long edge = toward_right ? (1LL << k) - (1LL << (k - m - 1))
                                        : (1LL << k) - (1LL << (k - m));
    const CReal rad = km * km * l2 * l2 +
                      CReal::from_long(2, p) * km * CReal::from_long(edge, p) * l2;
    const CReal root = rad.sqrt();
    return toward_right ? root - km * l2 : km * l2 + root;
}

// Sign of the two-term model expression against 1 at copy count t.
// The caller guarantees a nonnegative discriminant.
int model_side(const Int& R, const Rat& t, const char* what) {
    if (!R.fits_ulong_p())
        throw std::invalid_argument("model scale exceeds the machine word");
    const unsigned long r_ul = R.get_ui();
    const Int rm1 = R - 1;
    const Int rm1sq = rm1 * rm1;
    const Int r2 = 2 * R;
    const Int r4 = 4 * R;
    const Int r8 = 8 * R;
    const Int f0 = 2 * (r4 - 2);
    const Rat disc = Rat(rm1sq) - Rat(r8) * t;
    require(disc >= 0, "model comparison outside the real domain");
    const Rat a1 = Rat(r8) * t + Rat(rm1);
    const Rat a2 = a1 + Rat(r2);
    const Rat f1 = Rat(f0) * (Rat(4) * t + 1);
    const Rat d1 = Rat(r4) * t + Rat(rm1);
    const Rat d2 = Rat(4) * t + 1;
    return with_precision(256, mpfr_prec_t(1) << 14, what, [&](mpfr_prec_t p) {
        const CReal delta = CReal::from_rat(disc, p).sqrt();
        const CReal base =
            (CReal::from_rat(a1, p) - delta) / (CReal::from_rat(a2, p) + delta);
        const CReal den = CReal::from_rat(d1, p) - CReal::from_rat(d2, p) * delta;
        const CReal value = CReal::from_rat(f1, p) *
                            (CReal::from_int(R, p) + delta) / den *
                            base.pow_ui(r_ul);
        return demand_cmp(value, Rat(1));
    });
}

}  // namespace

CReal entropy(const Rat& x, mpfr_prec_t prec) {
    if (x < 0 || x > 1) throw std::invalid_argument("entropy: argument outside [0, 1]");
    Rat y = 1 - 2 * x;
    if (y < 0) y = -y;
    if (y == 1) return CReal::from_long(0, prec);
    if (y == 0) return CReal::from_long(1, prec);
    const long scale = static_cast<long>(bit_length(y.get_den())) -
                       static_cast<long>(bit_length(y.get_num()));
    const mpfr_prec_t start = prec + 64 + 4 * static_cast<mpfr_prec_t>(std::max<long>(0, scale + 1));
    const mpfr_prec_t cap = std::max<mpfr_prec_t>(start * 8, mpfr_prec_t(1) << 15);
    Rat xm = x;
    if (xm > Rat(1, 2)) xm = 1 - xm;
    return with_precision(start, cap, "entropy", [&](mpfr_prec_t p) {
        const CReal l2 = CReal::const_ln2(p);
        const CReal one = CReal::from_long(1, p);
        CReal h = one;
        if (y <= Rat(1, 2)) {
            // Near the center the defect series avoids cancellation.
            h = one - entropy_defect(y, p) / l2;
        } else {
            // Lopsided arguments make the series converge too slowly;
            // the direct formula is well conditioned there.
            const CReal xv = CReal::from_rat(xm, p);
            const CReal cv = one - xv;
            h = -(xv * xv.log2() + cv * cv.log2());
        }
        const CReal yv = CReal::from_rat(y, p);
        const CReal y2 = yv * yv;
        const CReal upper = one - y2 / (CReal::from_long(2, p) * l2);
        const CReal lower =
            upper - ((l2 - CReal::from_rat(Rat(1, 2), p)) / l2) * (y2 * y2);
        require(demand_cmp(h, upper) < 0, "entropy above its quadratic upper bound");
        require(demand_cmp(h, lower) > 0, "entropy below its quartic lower bound");
        return h;
    });
}

DimensionThreshold dimension_threshold(int m, mpfr_prec_t prec) {
    if (m < 1 || m > 4096)
        throw std::invalid_argument("dimension_threshold: m out of range");
    const mpfr_prec_t start =
        std::max<mpfr_prec_t>(prec, mpfr_prec_t(4) * m + 64);
    const mpfr_prec_t cap = std::max<mpfr_prec_t>(mpfr_prec_t(1) << 14, start * 8);
    return with_precision(start, cap, "dimension_threshold", [&](mpfr_prec_t p) {
        DimensionThreshold r;
        r.m = m;
        const CReal U = entropy_gap(m, p);
        r.entropy_gap = U;
        const CReal l2 = CReal::const_ln2(p);
        const Int dd = pow2(static_cast<unsigned long>(m) + 2) - 3;
        const CReal u = CReal::from_int(pow2(static_cast<unsigned long>(m) + 3), p) * U * l2 -
                        CReal::from_long(1, p);
        r.gap_excess = u;
        const Rat u_floor(Int(3), dd);
        const CReal u_cap =
            CReal::from_rat(u_floor, p) +
            (CReal::from_long(2, p) * l2 - CReal::from_long(1, p)) *
                CReal::from_int(pow2(static_cast<unsigned long>(m) + 2), p) /
                CReal::from_int(dd * dd * dd, p);
        require(demand_cmp(u, u_floor) > 0, "gap excess at or below its sandwich floor");
        require(demand_cmp(u, u_cap) < 0, "gap excess at or above its sandwich cap");

        auto gsign_int = [&](long long kk) {
            return demand_sign(g_value(CReal::from_long(kk, p), m, U, p));
        };
        require(gsign_int(m + 1) > 0, "threshold search floor not positive");
        long long step = 1;
        long long hi_k = m + 2;
        while (gsign_int(hi_k) > 0) {
            step *= 2;
            hi_k = m + 1 + step;
            require(step <= 4096, "threshold search found no sign change");
        }
        long long lo_k = m + 1;
        while (hi_k - lo_k > 1) {
            const long long mid = lo_k + (hi_k - lo_k) / 2;
            if (gsign_int(mid) > 0)
                lo_k = mid;
            else
                hi_k = mid;
        }
        r.least_dimension = static_cast<int>(hi_k);

        Rat a(static_cast<long>(hi_k - 1));
        Rat b(static_cast<long>(hi_k));
        for (int it = 0; it < 24; ++it) {
            const Rat mid = (a + b) / 2;
            if (demand_sign(g_value(CReal::from_rat(mid, p), m, U, p)) > 0)
                a = mid;
            else
                b = mid;
        }
        r.root_lo = a;
        r.root_hi = b;

        const Estimates est = root_estimates(m, p);
        r.estimate_lo = est.lo;
        r.estimate_hi = est.hi;
        // The upper estimate clears the root from m = 2 on. The lower
        // estimate only does so from m = 4 on: at m = 2 and m = 3 the
        // root sits below it (certified), though the two still share a
        // ceiling there.
        if (m >= 2)
            require(demand_sign(g_value(est.hi, m, U, p)) < 0,
                    "closed-form upper estimate not above the root");
        if (m >= 4)
            require(demand_sign(g_value(est.lo, m, U, p)) > 0,
                    "closed-form lower estimate not below the root");
        return r;
    });
}

std::vector<GapHit> integer_gap_scan(int u_max, mpfr_prec_t prec) {
    if (u_max < 1 || u_max > 64)
        throw std::invalid_argument("integer_gap_scan: u_max out of range");
    std::vector<GapHit> hits;
    for (int u = 1; u <= u_max; ++u) {
        const Rat w(Int(static_cast<long>(u) * u), pow2(static_cast<unsigned long>(u)));
        const Rat wneg = -w;
        const std::vector<Int> inside = with_precision(
            std::max<mpfr_prec_t>(prec, 192), mpfr_prec_t(1) << 14, "integer_gap_scan",
            [&](mpfr_prec_t p) {
                const CReal c =
                    CReal::from_int(pow2(static_cast<unsigned long>(u)), p) /
                        CReal::const_ln2(p) -
                    CReal::from_long(u + 5, p);
                std::vector<Int> in;
                const Int base = floor_rat(c.midpoint_rat());
                for (long d = -2; d <= 3; ++d) {
                    const Int j = base + d;
                    if (j < 1) continue;
                    const CReal diff = c - CReal::from_int(j, p);
                    if (demand_cmp(diff, w) < 0 && demand_cmp(diff, wneg) > 0)
                        in.push_back(j);
                }
                return in;
            });
        for (const Int& j : inside) {
            GapHit h;
            h.u = u;
            h.m = j;
            require(j.fits_slong_p() && j.get_si() <= 4096,
                    "window integer beyond the threshold domain");
            const int mj = static_cast<int>(j.get_si());
            h.least_dimension = dimension_threshold(mj).least_dimension;
            h.estimate_ceil = certified_ceil_ll(
                [&](mpfr_prec_t p) { return root_estimates(mj, p).lo; },
                std::max<mpfr_prec_t>(prec, 256), "integer_gap_scan");
            require(h.least_dimension == h.estimate_ceil,
                    "threshold differs from the rounded lower estimate at a window integer");
            hits.push_back(h);
        }
    }
    return hits;
}

MidBandInterval min_term_interval(int k, int m, mpfr_prec_t prec) {
    if (k < 4 || k > 40 || m < 1 || m > k - 2)
        throw std::invalid_argument("min_term_interval: band out of range");
    MidBandInterval r;
    r.k = k;
    r.m = m;
    r.mid = band_midpoint(k, m);
    r.reach_lo_cap = gamma_reach(k, m, false, prec);
    r.reach_hi_cap = gamma_reach(k, m, true, prec);
    r.fires_at_mid = ugly_by_min_term(k, r.mid);
    if (!r.fires_at_mid) return r;

    const long long band_lo = (1LL << k) - (1LL << (k - m));  // exclusive left edge
    const long long band_hi = (1LL << k) - (1LL << (k - m - 1));
    long long lo = r.mid;
    while (lo - 1 > band_lo && ugly_by_min_term(k, lo - 1)) --lo;
    long long hi = r.mid;
    while (hi + 1 <= band_hi && ugly_by_min_term(k, hi + 1)) ++hi;
    r.lo = lo;
    r.hi = hi;
    r.offset_lo = lo - band_lo;
    r.offset_hi = hi - band_lo;

    const long long cap_lo = certified_ceil_ll(
        [&](mpfr_prec_t p) { return gamma_reach(k, m, false, p); }, prec,
        "min_term_interval: left reach");
    const long long cap_hi = certified_ceil_ll(
        [&](mpfr_prec_t p) { return gamma_reach(k, m, true, p); }, prec,
        "min_term_interval: right reach");
    require(r.offset_lo <= cap_lo, "run start beyond its closed-form reach cap");
    require((1LL << (k - m - 1)) - r.offset_hi <= cap_hi,
            "run end short of its closed-form reach floor");
    return r;
}

long long min_term_fail_count(int k) {
    if (k < 2 || k > 24)
        throw std::invalid_argument("min_term_fail_count: k out of range");
    long long count = 0;
    for (long long n = 1LL << (k - 1); n < (1LL << k); ++n)
        if (!ugly_by_min_term(k, n)) ++count;
    return count;
}

CReal min_term_fail_bound(int k, mpfr_prec_t prec) {
    if (k < 2 || k > 62)
        throw std::invalid_argument("min_term_fail_bound: k out of range");
    const CReal l2 = CReal::const_ln2(prec);
    const CReal kv = CReal::from_long(k, prec);
    return kv + CReal::from_rat(Rat(k + 5, 2), prec).exp2() /
                    CReal::from_long(3, prec) * (kv * kv * kv * l2).sqrt();
}

TailThresholds tail_thresholds(int k, const EngineBudget& budget, const TailScan* scan) {
    if (k < 6 || k > 24)
        throw std::invalid_argument("tail_thresholds: k out of range");
    TailThresholds r;
    r.k = k;
    r.min_term_floor = certified_ceil_ll(
        [&](mpfr_prec_t p) {
            return CReal::from_int(pow2(static_cast<unsigned long>(k) - 6), p) /
                       (CReal::from_long(k - 1, p) * CReal::const_ln2(p)) -
                   CReal::from_rat(Rat(1, 4), p);
        },
        256, "tail_thresholds: min-term floor");

    const Int R = pow2(static_cast<unsigned long>(k) - 4);
    const Int r8 = 8 * R;
    const Int disc_num = (R - 1) * (R - 1);
    long long t_star = -1;
    bool vacuous = false;
    for (long long t = 1; t <= (1LL << (k - 5)) + 16; ++t) {
        const Int disc = disc_num - r8 * int_from(t);
        if (disc < 0) {
            t_star = t;
            vacuous = true;
            break;
        }
        if (model_side(R, Rat(int_from(t)), "tail_thresholds: model comparison") > 0) {
            t_star = t;
            break;
        }
    }
    require(t_star > 0, "model search exhausted its range");
    r.model_ceil = t_star;

    Rat lo_r, hi_r;
    if (vacuous) {
        lo_r = Rat(0);
        hi_r = Rat(disc_num, r8);
    } else {
        hi_r = Rat(int_from(t_star));
        lo_r = hi_r - 1;
        if (t_star == 1) {
            lo_r = Rat(1, 2);
            int guard = 0;
            while (model_side(R, lo_r, "tail_thresholds: bracket floor") > 0) {
                hi_r = lo_r;
                lo_r /= 2;
                require(++guard < 40, "model bracket floor not found");
            }
        }
        for (int it = 0; it < 24; ++it) {
            const Rat mid = (lo_r + hi_r) / 2;
            if (model_side(R, mid, "tail_thresholds: model bisection") > 0)
                hi_r = mid;
            else
                lo_r = mid;
        }
    }
    r.model_lo = CReal::from_rat(lo_r, 256);
    r.model_hi = CReal::from_rat(hi_r, 256);

    with_precision(256, mpfr_prec_t(1) << 14, "tail_thresholds: model cap",
                   [&](mpfr_prec_t p) {
        const CReal l2 = CReal::const_ln2(p);
        const CReal den = CReal::from_long(k - 2, p) * l2 +
                          CReal::from_long(k - 3, p).ln() -
                          CReal::from_long(1, p) /
                              CReal::from_int(pow2(static_cast<unsigned long>(k) - 3) - 1, p);
        const CReal cap = CReal::from_int(pow2(static_cast<unsigned long>(k) - 5), p) / den +
                          CReal::from_rat(Rat(1, 2), p);
        require(demand_cmp(cap, hi_r) > 0, "model crossing above its closed-form cap");
        return 0;
    });

    long long theta1 = -1;
    for (long long t = 1; t <= r.model_ceil; ++t) {
        const long long n = (1LL << (k - 3)) * (4 * t + 1);
        if (ugly_by_min_term(k, n)) continue;
        const Tristate pr = is_proper(pue_of(k, n), false, budget);
        if (pr == Tristate::unknown)
            throw budget_exhausted("tail_thresholds: properness undecided at n=" +
                                   std::to_string(n));
        if (pr == Tristate::yes) {
            theta1 = t;
            break;
        }
    }
    require(theta1 > 0, "no proper mid length at or below the model ceiling");
    r.first_proper_mid = theta1;
    require(r.min_term_floor <= theta1, "min-term floor above the first proper mid");

    Rat undershoot = Rat(4) * lo_r + 1;
    undershoot *= Rat(Int(k - 2), Int(k - 3));
    undershoot /= Rat(ipow(Int(4), static_cast<unsigned long>(k)));
    require(Rat(int_from(theta1)) > hi_r - undershoot,
            "first proper mid at or below the model undershoot");

    if (scan) {
        if (scan->k != k)
            throw std::invalid_argument("tail_thresholds: scan dimension mismatch");
        const long long cap_needed = std::max<long long>(1, (1LL << (k - 5)) - 1);
        if (!scan->all_residuals_closed && scan->t_cap < cap_needed)
            throw std::invalid_argument("tail_thresholds: scan stops short of the copy-count cap");
        r.tail_threshold = scan->tail_threshold;
        require(theta1 <= *r.tail_threshold, "tail threshold below the first proper mid");
        require(*r.tail_threshold <= std::max<long long>(1, 1LL << (k - 5)),
                "tail threshold above the copy-count cap");
    }
    return r;
}

ProperCensus proper_census(int k, const EngineBudget& budget, const TailScan* scan) {
    if (k < 6 || k > 16)
        throw std::invalid_argument("proper_census: k out of range");
    const long long cap = (1LL << (k - 5)) - 1;
    TailScan own;
    if (!scan) {
        own = scan_tail(k, cap, budget);
        scan = &own;
    } else if (scan->k != k || scan->t_cap != cap) {
        throw std::invalid_argument("proper_census: scan shape mismatch");
    }
    ProperCensus c;
    c.k = k;
    c.range_lo = scan->census_lo;
    c.range_hi = scan->census_hi;
    require(c.range_hi == (1LL << (2 * k - 6)) - 1, "census range cap mismatch");
    c.proper_count = scan->proper_count;
    c.band_proper = scan->proper_count - scan->boundary_points;
    const Rat floor_q = Rat(Int(17) * pow2(static_cast<unsigned long>(2 * k) - 6), Int(21)) -
                        Rat(Int(55) * pow2(static_cast<unsigned long>(k) - 5), Int(3));
    const Int fl = ceil_rat(floor_q);
    require(fl.fits_slong_p(), "census floor out of machine range");
    c.count_floor = fl.get_si();
    require(c.band_proper >= c.count_floor, "census below its closed-form floor");
    c.tail_threshold = scan->tail_threshold;
    c.improper = scan->improper;
    c.mid_band_hit = scan->mid_band_hit;

    const int half = (k - 3) / 2;
    for (const BandTally& b : scan->bands) {
        const bool saturated =
            b.m >= half + 1 || b.t >= (1LL << (k - 2 * b.m - 3));
        if (saturated) {
            require(b.improper == 0, "saturated band carries an improper length");
        } else {
            const Int lhs = int_from(b.band_size - b.improper + 1) *
                            int_from(b.band_size - b.improper + 1);
            const Int rhs = pow2(static_cast<unsigned long>(k) + 1) * int_from(b.t);
            require(lhs > rhs, "unsaturated band below its counting floor");
        }
    }
    return c;
}

}  // namespace simplexdet
