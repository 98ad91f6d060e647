/*
 * Residual-class scans over long code lengths.
 *
 * Every length n >= 2^{k-1} + 1 splits as n = 2^{k-1} (t - 1) + n' with
 * a residual n' in [2^{k-1}, 2^k - 1]. Fixing the residual and walking
 * t upward, copy lifting closes the tail: once the properness check
 * with the first-row codeword removed succeeds at some t0, every
 * longer length in the same residual class is proper and needs no
 * further engine work. The scan records the improper lengths it finds
 * below the closure point, grouped into maximal runs per copy count
 * and band.
 *
 * Lengths with n' = 2^{k-1} exactly (first-order Reed-Muller boundary)
 * are always proper; they are counted arithmetically and never sent to
 * the engine.
 */
#pragma once

#include <vector>

#include "simplexdet/classifier.hpp"

namespace simplexdet {

struct ImproperRange {
    long long lo = 0;
    long long hi = 0;
};

// Maximal runs of improper lengths sharing a copy count t and band m.
struct ImproperSet {
    long long t = 0;
    int m = 0;
    std::vector<ImproperRange> ranges;
    long long size = 0;  // total lengths across ranges
};

// Per-band tally for one (t, m) cell of the scanned grid.
struct BandTally {
    long long t = 0;
    int m = 0;
    long long band_size = 0;
    long long improper = 0;
};

struct TailScan {
    int k = 0;
    long long t_cap = 0;  // copy counts 1..t_cap were scanned
    // True when every residual class reached its lifting closure at
    // some t <= t_cap, so the tail beyond the cap is covered by the
    // scan itself rather than by the copy-count theorem.
    bool all_residuals_closed = false;
    // Least t such that every length with copy count >= t seen by the
    // scan is proper: 1 + the largest t carrying an improper length.
    long long tail_threshold = 1;
    long long census_lo = 0;      // 2^{k-1} + 1
    long long census_hi = 0;      // 2^{k-1} (t_cap + 1) - 1
    long long census_size = 0;
    long long proper_count = 0;   // proper lengths in [census_lo, census_hi]
    long long improper_total = 0;
    long long boundary_points = 0;  // always-proper m = 0 lengths in range
    std::vector<ImproperSet> improper;  // ascending (t, m), ranges disjoint
    std::vector<BandTally> bands;       // every scanned (t, m) cell
    // Every nonempty improper set in band m = 1 contains the length
    // 2^{k-1} (t - 1) + n(k,1) at its band's interior optimum. Reported
    // as an observation, never asserted.
    bool mid_band_hit = true;
};

// Scans copy counts 1..t_cap across all residual classes of dimension
// k. Throws budget_exhausted if the engine cannot decide a length
// within the budget. The parallel path distributes residual classes
// across OpenMP threads; results are merged in residual order, so the
// output is identical to the serial reference.
TailScan scan_tail(int k, long long t_cap, const EngineBudget& budget = {});

// Serial reference implementation with the same contract.
TailScan scan_tail_serial(int k, long long t_cap, const EngineBudget& budget = {});

}  // namespace simplexdet
