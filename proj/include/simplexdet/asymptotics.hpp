/*
 * Asymptotic thresholds built on certified real arithmetic.
 *
 * The min-term bound at the worst length of band m fires exactly when
 * G(k) = k - m - 2^{k-m-2} U_m drops below zero, where U_m is the
 * scaled entropy gap at the band's interior optimum. This header
 * exposes the entropy enclosure, the least firing dimension per band
 * with its closed-form bracket, the firing interval around a band's
 * worst length with its closed-form reach bounds, census counts of
 * lengths the bound misses, and the copy-count thresholds past which
 * every length is proper.
 */
#pragma once

#include <optional>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/certified.hpp"
#include "simplexdet/scan.hpp"

namespace simplexdet {

// Certified enclosure of the binary entropy h(x). For x in (0, 1/2)
// the quadratic upper bound 1 - (1-2x)^2 / (2 ln 2) and the quartic
// lower bound below it are certified strict before returning.
CReal entropy(const Rat& x, mpfr_prec_t prec = 256);

struct DimensionThreshold {
    int m = 0;
    CReal entropy_gap;  // U_m = (2^{m+2} - 3) (1 - h at the band optimum)
    CReal gap_excess;   // u_m with 2^{m+3} U_m ln 2 = 1 + u_m
    Rat root_lo, root_hi;     // isolating interval for the real root of G
    int least_dimension = 0;  // least integer k with G(k) < 0
    // Closed-form estimates for the root. The upper one is certified
    // above the root for m >= 2, the lower one below it for m >= 4; at
    // m = 2 and m = 3 the root lies below the lower estimate, but both
    // round up to least_dimension there.
    CReal estimate_lo, estimate_hi;
};

// Locates the least dimension whose band-m worst length triggers the
// min-term bound. The gap-excess sandwich and the applicable sides of
// the closed-form bracket are certified on every call.
DimensionThreshold dimension_threshold(int m, mpfr_prec_t prec = 256);

struct GapHit {
    int u = 0;
    Int m;                    // integer inside the window for this u
    int least_dimension = 0;  // threshold at that m
    long long estimate_ceil = 0;  // ceiling of the closed-form lower estimate
};

// The rounded closed-form estimate can disagree with the true least
// dimension only when an integer m falls in a narrow window around
// 2^u / ln 2 - u - 5 for some u. Enumerates those integers for
// u <= u_max and certifies that the threshold still equals the rounded
// lower estimate at each of them.
std::vector<GapHit> integer_gap_scan(int u_max, mpfr_prec_t prec = 256);

struct MidBandInterval {
    int k = 0, m = 0;
    long long mid = 0;          // the band's worst length
    bool fires_at_mid = false;  // min-term bound holds there
    long long lo = 0, hi = -1;  // maximal run around mid where it fires
    long long offset_lo = 0;    // lo relative to the band's left edge
    long long offset_hi = 0;    // hi relative to the band's left edge
    CReal reach_lo_cap;  // certified cap on offset_lo
    CReal reach_hi_cap;  // certified cap on the gap from hi to the band's right edge
};

// Scans outward from the band-m worst length of dimension k while the
// min-term bound keeps firing, and certifies the closed-form caps on
// how far the run extends. When the bound already fails at the worst
// length the run is reported empty.
MidBandInterval min_term_interval(int k, int m, mpfr_prec_t prec = 256);

// Number of lengths in [2^{k-1}, 2^k - 1] where the min-term bound
// fails, and its closed-form upper bound.
long long min_term_fail_count(int k);
CReal min_term_fail_bound(int k, mpfr_prec_t prec = 256);

struct TailThresholds {
    int k = 0;
    long long min_term_floor = 0;    // least copy count the min-term bound cannot exclude
    long long first_proper_mid = 0;  // least copy count with a proper mid-band length
    long long model_ceil = 0;        // least copy count satisfying the two-term model
    CReal model_lo, model_hi;        // enclosure of the model's real crossing
    // Least copy count past which every length is proper; filled from a
    // completed tail scan when one is supplied.
    std::optional<long long> tail_threshold;
};

// Copy-count thresholds for dimension k >= 6. The model crossing is
// bracketed by certified comparisons; the relations
// floor <= first proper mid <= model ceiling and the closed-form cap
// on the crossing are certified before returning. Passing a completed
// scan for the same k fills tail_threshold from it.
TailThresholds tail_thresholds(int k, const EngineBudget& budget = {},
                               const TailScan* scan = nullptr);

struct ProperCensus {
    int k = 0;
    long long range_lo = 0, range_hi = 0;  // [2^{k-1} + 1, 2^{2k-6} - 1]
    long long proper_count = 0;
    long long band_proper = 0;     // proper_count minus the always-proper boundary lengths
    long long count_floor = 0;     // closed-form lower bound on band_proper
    long long tail_threshold = 0;  // least copy count past which all lengths are proper
    std::vector<ImproperSet> improper;
    bool mid_band_hit = true;  // observation, see TailScan
};

// Census of proper lengths for dimension k in [6, 12] by default
// budget. Runs (or reuses) the full tail scan up to the copy-count
// cap 2^{k-5} - 1, then certifies the per-band counting laws and the
// closed-form lower bound on the total.
ProperCensus proper_census(int k, const EngineBudget& budget = {},
                           const TailScan* scan = nullptr);

}  // namespace simplexdet
