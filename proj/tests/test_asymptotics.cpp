// Tests for the asymptotic threshold machinery and the tail scan.
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "simplexdet/asymptotics.hpp"
#include "simplexdet/bigint.hpp"
#include "simplexdet/certified.hpp"
#include "simplexdet/classifier.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/scan.hpp"

using namespace simplexdet;

namespace {

// Piecewise-linear table of the least firing dimension per band.
int expected_least_dimension(int m) {
    if (m == 1) return 9;
    if (m <= 4) return 2 * m + 8;
    if (m <= 14) return 2 * m + 9;
    if (m <= 36) return 2 * m + 10;
    if (m <= 81) return 2 * m + 11;
    if (m <= 172) return 2 * m + 12;
    if (m <= 356) return 2 * m + 13;
    std::abort();
}

bool same_improper(const std::vector<ImproperSet>& a, const std::vector<ImproperSet>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].t != b[i].t || a[i].m != b[i].m || a[i].size != b[i].size) return false;
        if (a[i].ranges.size() != b[i].ranges.size()) return false;
        for (size_t j = 0; j < a[i].ranges.size(); ++j)
            if (a[i].ranges[j].lo != b[i].ranges[j].lo || a[i].ranges[j].hi != b[i].ranges[j].hi)
                return false;
    }
    return true;
}

bool same_scan(const TailScan& a, const TailScan& b) {
    if (a.k != b.k || a.t_cap != b.t_cap || a.all_residuals_closed != b.all_residuals_closed ||
        a.tail_threshold != b.tail_threshold || a.census_lo != b.census_lo ||
        a.census_hi != b.census_hi || a.census_size != b.census_size ||
        a.proper_count != b.proper_count || a.improper_total != b.improper_total ||
        a.boundary_points != b.boundary_points || a.mid_band_hit != b.mid_band_hit)
        return false;
    if (!same_improper(a.improper, b.improper)) return false;
    if (a.bands.size() != b.bands.size()) return false;
    for (size_t i = 0; i < a.bands.size(); ++i)
        if (a.bands[i].t != b.bands[i].t || a.bands[i].m != b.bands[i].m ||
            a.bands[i].band_size != b.bands[i].band_size ||
            a.bands[i].improper != b.bands[i].improper)
            return false;
    return true;
}

}  // namespace

TEST_CASE("binary entropy enclosure") {
    // The center and the endpoints come back as exact point enclosures.
    const CReal h_half = entropy(Rat(1, 2));
    CHECK(h_half.width_double() == 0.0);
    CHECK((h_half - CReal::from_long(1, 64)).contains_zero());
    CHECK(entropy(Rat(0)).contains_zero());
    CHECK(entropy(Rat(0)).width_double() == 0.0);
    CHECK(entropy(Rat(1)).contains_zero());

    const CReal h25 = entropy(Rat(2, 5));
    CHECK(*h25.compare_to(Rat(9709, 10000)) > 0);
    CHECK(*h25.compare_to(Rat(9710, 10000)) < 0);

    // Symmetry about 1/2 and strict monotonicity below it.
    const CReal a = entropy(Rat(3, 11));
    const CReal b = entropy(Rat(8, 11));
    CHECK((a - b).contains_zero());
    CHECK(*entropy(Rat(1, 4)).compare_to(entropy(Rat(2, 5))) < 0);

    // Every call certifies the quadratic/quartic sandwich internally;
    // sweep a spread of arguments, including very lopsided ones.
    srand(20240816);
    for (int i = 0; i < 200; ++i) {
        const int den = 2 + rand() % 100000;
        const int num = 1 + rand() % (den - 1);
        const CReal h = entropy(Rat(num, den));
        CHECK(*h.compare_to(Rat(0)) > 0);
        if (2 * num != den) CHECK(*h.compare_to(Rat(1)) < 0);
    }
    CHECK_NOTHROW(entropy(Rat(Int(1), pow2(40))));
    CHECK_THROWS_AS(entropy(Rat(-1, 10)), std::invalid_argument);
    CHECK_THROWS_AS(entropy(Rat(11, 10)), std::invalid_argument);
}

TEST_CASE("least firing dimension per band") {
    const int pins[][2] = {{1, 9},   {2, 12},  {3, 14},  {4, 16},   {5, 19},   {14, 37},
                           {15, 40}, {36, 82}, {37, 85}, {81, 173}, {82, 176}, {173, 359}};
    for (const auto& pin : pins) {
        const DimensionThreshold r = dimension_threshold(pin[0]);
        CHECK(r.least_dimension == pin[1]);
        // The root is isolated inside (K - 1, K).
        CHECK(r.root_lo >= Rat(pin[1] - 1));
        CHECK(r.root_hi <= Rat(pin[1]));
        CHECK(r.root_hi - r.root_lo <= Rat(1, int_from(1LL << 20)));
    }

    // The closed-form lower estimate shares the threshold's ceiling
    // even at m = 2 and 3, where it sits above the root.
    for (int m = 2; m <= 4; ++m) {
        const DimensionThreshold r = dimension_threshold(m);
        const int kk = r.least_dimension;
        CHECK(*r.estimate_lo.compare_to(Rat(kk)) < 0);
        CHECK(*r.estimate_lo.compare_to(Rat(kk - 1)) > 0);
        if (m <= 3) CHECK(*r.estimate_lo.compare_to(r.root_hi) > 0);
    }
}

TEST_CASE("threshold table across bands") {
    // Each call certifies the gap-excess sandwich and the applicable
    // estimate sides internally.
    int prev = 0;
    for (int m = 1; m <= 120; ++m) {
        const DimensionThreshold r = dimension_threshold(m);
        CHECK(r.least_dimension == expected_least_dimension(m));
        CHECK(r.least_dimension > prev);
        prev = r.least_dimension;
    }
    CHECK_THROWS_AS(dimension_threshold(0), std::invalid_argument);
    CHECK_THROWS_AS(dimension_threshold(4097), std::invalid_argument);
}

TEST_CASE("integer gap scan") {
    const std::vector<GapHit> hits = integer_gap_scan(12);
    const long long expected[][2] = {{3, 3}, {3, 4}, {4, 14}, {4, 15}, {5, 36}, {6, 81}, {7, 173}};
    REQUIRE(hits.size() == 7);
    for (size_t i = 0; i < hits.size(); ++i) {
        CHECK(hits[i].u == expected[i][0]);
        CHECK(hits[i].m == int_from(expected[i][1]));
        CHECK(hits[i].least_dimension == hits[i].estimate_ceil);
        CHECK(hits[i].least_dimension == expected_least_dimension((int)expected[i][1]));
    }
    CHECK_THROWS_AS(integer_gap_scan(0), std::invalid_argument);
    CHECK_THROWS_AS(integer_gap_scan(65), std::invalid_argument);
}

TEST_CASE("min-term firing interval at the band optimum") {
    const MidBandInterval iv91 = min_term_interval(9, 1);
    CHECK(iv91.fires_at_mid);
    CHECK(iv91.mid == band_midpoint(9, 1));
    CHECK(iv91.lo == 315);
    CHECK(iv91.hi == 324);
    CHECK(iv91.offset_lo == 59);
    CHECK(iv91.offset_hi == 68);
    for (long long n = iv91.lo; n <= iv91.hi; ++n) CHECK(ugly_by_min_term(9, n));
    CHECK_FALSE(ugly_by_min_term(9, iv91.lo - 1));
    CHECK_FALSE(ugly_by_min_term(9, iv91.hi + 1));

    // Below the least firing dimension the run is empty.
    const MidBandInterval iv81 = min_term_interval(8, 1);
    CHECK_FALSE(iv81.fires_at_mid);
    CHECK(iv81.lo > iv81.hi);

    const long long pins[][4] = {
        {10, 1, 599, 676}, {11, 1, 1140, 1396}, {12, 1, 2219, 2878}, {12, 2, 3286, 3367}};
    for (const auto& pin : pins) {
        const MidBandInterval iv = min_term_interval((int)pin[0], (int)pin[1]);
        CHECK(iv.fires_at_mid);
        CHECK(iv.lo == pin[2]);
        CHECK(iv.hi == pin[3]);
    }

    CHECK_THROWS_AS(min_term_interval(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(min_term_interval(9, 0), std::invalid_argument);
    CHECK_THROWS_AS(min_term_interval(9, 8), std::invalid_argument);
    CHECK_THROWS_AS(min_term_interval(41, 1), std::invalid_argument);
}

TEST_CASE("min-term failure census") {
    CHECK(min_term_fail_count(9) == 246);
    // k = 8 sits below every band's least firing dimension, so the
    // bound fails at all 2^{k-1} residual lengths.
    CHECK(min_term_fail_count(8) == 128);
    const CReal bound9 = min_term_fail_bound(9);
    CHECK(*bound9.compare_to(Rat(246)) > 0);
    CHECK(*bound9.compare_to(Rat(970)) < 0);
    CHECK_THROWS_AS(min_term_fail_count(1), std::invalid_argument);
    CHECK_THROWS_AS(min_term_fail_bound(63), std::invalid_argument);
}

TEST_CASE("copy-count thresholds") {
    // Columns per dimension: least copy count the min-term bound cannot
    // exclude, least copy count with a proper mid-band length, least
    // copy count satisfying the two-term model.
    const long long pins[][4] = {{6, 1, 1, 1},   {7, 1, 1, 1},    {8, 1, 1, 1},
                                 {9, 2, 2, 2},   {10, 3, 4, 4},   {11, 5, 7, 7},
                                 {12, 9, 12, 12}, {13, 16, 22, 22}, {14, 29, 41, 41},
                                 {15, 53, 78, 78}};
    for (const auto& pin : pins) {
        const TailThresholds th = tail_thresholds((int)pin[0]);
        CHECK(th.min_term_floor == pin[1]);
        CHECK(th.first_proper_mid == pin[2]);
        CHECK(th.model_ceil == pin[3]);
        CHECK_FALSE(th.tail_threshold.has_value());
        CHECK(th.min_term_floor <= th.first_proper_mid);
        CHECK(th.first_proper_mid <= th.model_ceil);
    }
    CHECK_THROWS_AS(tail_thresholds(5), std::invalid_argument);
    CHECK_THROWS_AS(tail_thresholds(25), std::invalid_argument);
}

TEST_CASE("tail scan lifts residual classes") {
    const TailScan s9 = scan_tail(9, 15);
    CHECK(s9.k == 9);
    CHECK(s9.t_cap == 15);
    CHECK(s9.all_residuals_closed);
    CHECK(s9.tail_threshold == 2);
    CHECK(s9.census_lo == 257);
    CHECK(s9.census_hi == 4095);
    CHECK(s9.census_size == 3839);
    CHECK(s9.proper_count == 3816);
    CHECK(s9.improper_total == 23);
    CHECK(s9.boundary_points == 14);
    CHECK(s9.mid_band_hit);
    REQUIRE(s9.improper.size() == 1);
    CHECK(s9.improper[0].t == 1);
    CHECK(s9.improper[0].m == 1);
    CHECK(s9.improper[0].size == 23);
    REQUIRE(s9.improper[0].ranges.size() == 1);
    CHECK(s9.improper[0].ranges[0].lo == 308);
    CHECK(s9.improper[0].ranges[0].hi == 330);

    // The serial reference and a repeated parallel run agree exactly.
    CHECK(same_scan(s9, scan_tail_serial(9, 15)));
    CHECK(same_scan(s9, scan_tail(9, 15)));

    // Band tallies cover the whole grid and add up.
    long long improper_sum = 0, size_sum = 0;
    for (const auto& bt : s9.bands) {
        CHECK(bt.band_size == (1LL << (9 - bt.m - 1)));
        improper_sum += bt.improper;
        size_sum += bt.band_size;
    }
    CHECK(improper_sum == s9.improper_total);
    CHECK(size_sum + s9.boundary_points == s9.census_size);

    const TailScan s10 = scan_tail(10, 31);
    CHECK(s10.tail_threshold == 4);
    CHECK(s10.proper_count == 15715);
    CHECK(s10.boundary_points == 30);
    REQUIRE(s10.improper.size() == 3);
    const long long expect10[][4] = {{1, 1, 588, 687}, {2, 1, 1127, 1175}, {3, 1, 1661, 1667}};
    for (int i = 0; i < 3; ++i) {
        CHECK(s10.improper[i].t == expect10[i][0]);
        CHECK(s10.improper[i].m == expect10[i][1]);
        REQUIRE(s10.improper[i].ranges.size() == 1);
        CHECK(s10.improper[i].ranges[0].lo == expect10[i][2]);
        CHECK(s10.improper[i].ranges[0].hi == expect10[i][3]);
    }

    const TailThresholds th9 = tail_thresholds(9, {}, &s9);
    REQUIRE(th9.tail_threshold.has_value());
    CHECK(*th9.tail_threshold == 2);
    const TailThresholds th10 = tail_thresholds(10, {}, &s10);
    REQUIRE(th10.tail_threshold.has_value());
    CHECK(*th10.tail_threshold == 4);

    CHECK_THROWS_AS(scan_tail(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(scan_tail(25, 1), std::invalid_argument);
    CHECK_THROWS_AS(scan_tail(9, 0), std::invalid_argument);
    CHECK_THROWS_AS(scan_tail(9, 1LL << 55), std::invalid_argument);
    CHECK_THROWS_AS(tail_thresholds(10, {}, &s9), std::invalid_argument);

    // A scan cut off before its residuals close cannot back the
    // copy-count threshold.
    const TailScan s10short = scan_tail(10, 2);
    CHECK_FALSE(s10short.all_residuals_closed);
    CHECK_THROWS_AS(tail_thresholds(10, {}, &s10short), std::invalid_argument);
}

TEST_CASE("proper length census") {
    // Dimensions 6 through 8 are proper at every length in range.
    const long long small[][3] = {{6, 31, 16}, {7, 191, 134}, {8, 895, 683}};
    for (const auto& pin : small) {
        const ProperCensus c = proper_census((int)pin[0]);
        CHECK(c.proper_count == pin[1]);
        CHECK(c.proper_count == c.range_hi - c.range_lo + 1);
        CHECK(c.improper.empty());
        CHECK(c.tail_threshold == 1);
        CHECK(c.count_floor == pin[2]);
        const Int closed = pow2(2 * (int)pin[0] - 6) - pow2((int)pin[0] - 1) - 1;
        CHECK(int_from(c.proper_count) == closed);
    }

    const ProperCensus c9 = proper_census(9);
    CHECK(c9.range_lo == 257);
    CHECK(c9.range_hi == 4095);
    CHECK(c9.proper_count == 3816);
    CHECK(c9.band_proper == 3802);
    CHECK(c9.count_floor == 3023);
    CHECK(c9.tail_threshold == 2);
    CHECK(c9.mid_band_hit);
    REQUIRE(c9.improper.size() == 1);
    CHECK(c9.improper[0].ranges[0].lo == 308);
    CHECK(c9.improper[0].ranges[0].hi == 330);

    CHECK_THROWS_AS(proper_census(5), std::invalid_argument);
    CHECK_THROWS_AS(proper_census(17), std::invalid_argument);
}
