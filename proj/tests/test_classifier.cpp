// Tests for the classification cascade and its exact decision engines.
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "simplexdet/bigint.hpp"
#include "simplexdet/classifier.hpp"
#include "simplexdet/densepoly.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/sparsepoly.hpp"
#include "simplexdet/uepoly.hpp"
#include "simplexdet/weights.hpp"

using namespace simplexdet;

namespace {

SparsePoly weight_sum_poly(const UePolynomial& ue) {
    std::vector<std::pair<long long, Int>> raw;
    for (const auto& [w, a] : ue.terms) raw.emplace_back(w, a);
    return SparsePoly::from_terms(std::move(raw));
}

void check_chain(const Verdict& v) {
    if (v.proper == Tristate::yes) CHECK(v.good == Tristate::yes);
    if (v.good == Tristate::yes) CHECK(v.satisfactory == Tristate::yes);
    if (v.satisfactory == Tristate::no) CHECK(v.good == Tristate::no);
    if (v.good == Tristate::no) CHECK(v.proper == Tristate::no);
    if (v.ugly_by_min_term) CHECK(v.satisfactory == Tristate::no);
    if (v.ugly_witness_weight.has_value()) CHECK(v.satisfactory == Tristate::no);
}

}  // namespace

TEST_CASE("min-term bound fires exactly on pinned ranges") {
    for (long long n = 313; n <= 326; ++n) CHECK(ugly_by_min_term(9, n) == (n >= 315 && n <= 324));
    CHECK_FALSE(ugly_by_min_term(10, 598));
    CHECK(ugly_by_min_term(10, 599));
    CHECK(ugly_by_min_term(10, 676));
    CHECK_FALSE(ugly_by_min_term(10, 677));
    CHECK_FALSE(ugly_by_min_term(17, 66545));
    CHECK(ugly_by_min_term(17, 66546));

    // The bound narrowly fails at the minimum weight here but holds one
    // weight up, where the count is twice as large.
    CHECK_FALSE(ugly_by_min_term(16, 58369));
    CHECK(min_weight_term(16, 58369).d == 28672);
    CHECK_FALSE(ugly_by_weight(16, 58369, 28672));
    CHECK(ugly_by_weight(16, 58369, 28673));
    CHECK_THROWS_AS(ugly_by_weight(16, 58369, 28674), std::invalid_argument);

    // Weights above n/2 peak at p = 1/2 where no term can reach the bound,
    // even when the symmetric-peak formula would claim otherwise.
    CHECK_FALSE(ugly_by_weight(9, 320, 256));
    for (int k = 4; k <= 8; ++k) CHECK_FALSE(ugly_by_min_term(k, (1LL << k) - 1));
}

TEST_CASE("min-term certificates agree with the exact ratio engine") {
    for (long long n = 313; n <= 326; ++n) {
        if (!ugly_by_min_term(9, n)) continue;
        const UePolynomial ue = pue_of(9, n);
        CHECK(is_satisfactory(ue) == Tristate::no);
        CHECK(is_good(ue) == Tristate::no);
    }
    CHECK(is_satisfactory(pue_of(16, 58369)) == Tristate::no);
}

TEST_CASE("derivative polynomial matches the substituted sign form") {
    const UePolynomial big = pue_of(9, 320);
    const DensePoly q320 = derivative_polynomial(big);
    CHECK(q320.c.front() == 256);

    UePolynomial single;
    single.k = 3;
    single.n = 7;
    single.terms = {{4, Int(1)}};
    const DensePoly qs = derivative_polynomial(single);
    REQUIRE(qs.c.size() == 2);
    CHECK(qs.c[0] == 4);
    CHECK(qs.c[1] == -7);

    // P'(p) = p^{d-1}(1-p)^{n-W-1} Q(p) and P'(p) factors through the
    // one-variable form F(u) at u = p/(1-p), so Q(p) = (1-p)^{W-d+1} F(u).
    const std::vector<std::pair<int, long long>> codes = {{9, 320}, {6, 40}, {5, 23}};
    const std::vector<Rat> samples = {Rat(1, 3), Rat(2, 5), Rat(1, 7)};
    for (const auto& [k, n] : codes) {
        const UePolynomial ue = pue_of(k, n);
        const DensePoly q = derivative_polynomial(ue);
        const SparsePoly f = properness_polynomial(ue);
        const long long d = ue.terms.front().first;
        const long long w_top = ue.terms.back().first;
        for (const Rat& p : samples) {
            const Rat lhs = q.value_at(p);
            const Rat u = p / (1 - p);
            const Rat rhs = pow_rat(1 - p, (unsigned long)(w_top - d + 1)) * f.value_at(u);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("edge intervals reproduce the closed-form bounds") {
    const ProperIntervals iv = sufficient_proper_intervals(9, 1, 1);
    CHECK(iv.lo1 == 256);
    CHECK(iv.hi1 == 272);
    CHECK(iv.lo2 == 365);
    CHECK(iv.hi2 == 384);
    CHECK(iv.contains(256));
    CHECK(iv.contains(272));
    CHECK_FALSE(iv.contains(273));
    CHECK_FALSE(iv.contains(364));
    CHECK(iv.contains(365));
    CHECK(iv.contains(384));
    CHECK_FALSE(iv.contains(385));

    // The left radius saturates at 2^{k-m-2} exactly when k <= 2m+3.
    for (int m = 1; m <= 3; ++m) {
        for (int k = m + 3; k <= 10; ++k) {
            const ProperIntervals v = sufficient_proper_intervals(k, m, 1);
            const bool saturated = v.hi1 - v.lo1 == (1LL << (k - m - 2));
            CHECK(saturated == (k <= 2 * m + 3));
        }
    }

    // At t = 2^{k-5}-1 the right radius collapses to 2^{k-3}-2.
    for (int k = 6; k <= 12; ++k) {
        const ProperIntervals v = sufficient_proper_intervals(k, 1, (1LL << (k - 5)) - 1);
        CHECK(v.hi2 - v.lo2 == (1LL << (k - 3)) - 2);
    }

    // Top band: the left interval degenerates to a point, the right is empty.
    const ProperIntervals top = sufficient_proper_intervals(5, 4, 1);
    CHECK(top.lo1 == 30);
    CHECK(top.hi1 == 30);
    CHECK(top.lo2 > top.hi2);
    CHECK(top.contains(30));
    CHECK_FALSE(top.contains(31));

    // Every covered length is in fact proper.
    for (long long n = 257; n <= 272; ++n) CHECK(is_proper(pue_of(9, n)) == Tristate::yes);
    for (long long n = 365; n <= 384; ++n) CHECK(is_proper(pue_of(9, n)) == Tristate::yes);
}

TEST_CASE("band threshold covers whole bands") {
    CHECK(full_band_proper_threshold(9, 1) == 3);
    CHECK(full_band_proper_threshold(12, 1) == 5);
    CHECK(full_band_proper_threshold(9, 15) == 2);
    CHECK(full_band_proper_threshold(9, 16) == 1);
    CHECK(full_band_proper_threshold(10, 32) == 1);
    CHECK(full_band_proper_threshold(6, 1) == 2);
    CHECK_THROWS_AS(full_band_proper_threshold(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(full_band_proper_threshold(9, 0), std::invalid_argument);

    // k = 6 with threshold 2: both bands m >= 2 must be proper throughout.
    for (long long n = 49; n <= 63; ++n) CHECK(is_proper(pue_of(6, n)) == Tristate::yes);

    // k = 9 with threshold 3: spot-check the m = 3 band with the engine.
    for (long long n : {449LL, 456LL, 470LL, 480LL}) CHECK(is_proper(pue_of(9, n)) == Tristate::yes);
}

TEST_CASE("classification cascade labels pinned codes") {
    const Verdict boundary = classify(9, 384);
    CHECK(boundary.proper == Tristate::yes);
    CHECK(boundary.good == Tristate::yes);
    CHECK(boundary.satisfactory == Tristate::yes);
    CHECK(boundary.decided_by == DecidedBy::boundary_distribution);
    CHECK_FALSE(boundary.ugly_by_min_term);

    const Verdict ugly = classify(9, 320);
    CHECK(ugly.proper == Tristate::no);
    CHECK(ugly.good == Tristate::no);
    CHECK(ugly.satisfactory == Tristate::no);
    CHECK(ugly.decided_by == DecidedBy::min_term_bound);
    CHECK(ugly.ugly_by_min_term);
    REQUIRE(ugly.ugly_witness_weight.has_value());
    CHECK(*ugly.ugly_witness_weight == 128);

    CHECK(2 * weight_distribution(9, 266).min_weight() < 266);
    const Verdict edge = classify(9, 266);
    CHECK(edge.proper == Tristate::yes);
    CHECK(edge.decided_by == DecidedBy::edge_interval);

    CHECK(2 * weight_distribution(9, 456).min_weight() < 456);
    const Verdict band = classify(9, 456);
    CHECK(band.proper == Tristate::yes);
    CHECK(band.decided_by == DecidedBy::band_bound);

    const Verdict refined = classify(16, 58369);
    CHECK(refined.proper == Tristate::no);
    CHECK(refined.good == Tristate::no);
    CHECK(refined.satisfactory == Tristate::no);
    CHECK(refined.decided_by == DecidedBy::weight_term_bound);
    CHECK_FALSE(refined.ugly_by_min_term);
    REQUIRE(refined.ugly_witness_weight.has_value());
    CHECK(*refined.ugly_witness_weight == 28673);

    ClassifyOptions plain;
    plain.shortcuts = false;
    for (const auto& [n, want] : std::vector<std::pair<long long, Tristate>>{
             {307, Tristate::yes}, {308, Tristate::no}, {320, Tristate::no}}) {
        const Verdict v = classify(9, n, plain);
        CHECK(v.proper == want);
        CHECK(v.decided_by == DecidedBy::root_isolation);
        check_chain(v);
    }

    // Shortcut and engine routes agree wherever both answer.
    for (long long n : {266LL, 384LL, 456LL}) {
        const Verdict fast = classify(9, n);
        const Verdict slow = classify(9, n, plain);
        CHECK(fast.proper == slow.proper);
        CHECK(fast.good == slow.good);
        CHECK(fast.satisfactory == slow.satisfactory);
    }
}

TEST_CASE("properness window around the first improper stretch") {
    for (long long n = 300; n <= 340; ++n) {
        const Verdict v = classify(9, n);
        const bool inside = n >= 308 && n <= 330;
        CHECK(v.proper == (inside ? Tristate::no : Tristate::yes));
        CHECK(v.satisfactory != Tristate::unknown);
        check_chain(v);
    }
    for (const auto& [n, want] : std::vector<std::pair<long long, Tristate>>{
             {513, Tristate::yes},
             {587, Tristate::yes},
             {588, Tristate::no},
             {687, Tristate::no},
             {688, Tristate::yes},
             {767, Tristate::yes}}) {
        const Verdict v = classify(10, n);
        CHECK(v.proper == want);
        check_chain(v);
    }
}

TEST_CASE("copy lifting transfers properness to longer codes") {
    // Whenever the skip variant of the residual code passes, every extension
    // by whole first-block copies must be proper.
    int lifted_bases = 0;
    for (long long np = 33; np <= 63; ++np) {
        if (is_proper(pue_of(6, np), true) != Tristate::yes) continue;
        ++lifted_bases;
        for (long long u = 1; u <= 2; ++u)
            CHECK(is_proper(pue_of(6, np + 32 * u)) == Tristate::yes);
    }
    CHECK(lifted_bases == 31);

    // A length where every cheaper shortcut provably misses.
    CHECK_FALSE(ugly_by_min_term(8, 280));
    CHECK(2 * weight_distribution(8, 280).min_weight() < 280);
    CHECK(decompose(8, 280).m == 1);
    CHECK(full_band_proper_threshold(8, 2) == 2);
    CHECK_FALSE(sufficient_proper_intervals(8, 1, 2).contains(280));
    CHECK(is_proper(pue_of(8, 152), true) == Tristate::yes);

    std::vector<long long> seen;
    ClassifyOptions opts;
    opts.cached_skip_proper = [&seen](long long n0) {
        seen.push_back(n0);
        return std::optional<bool>{};
    };
    const Verdict v = classify(8, 280, opts);
    CHECK(v.proper == Tristate::yes);
    CHECK(v.decided_by == DecidedBy::copy_lifting);
    REQUIRE(seen.size() == 1);
    CHECK(seen[0] == 152);

    ClassifyOptions cached;
    cached.cached_skip_proper = [](long long) { return std::optional<bool>{true}; };
    const Verdict hit = classify(8, 280, cached);
    CHECK(hit.proper == Tristate::yes);
    CHECK(hit.decided_by == DecidedBy::copy_lifting);

    ClassifyOptions plain;
    plain.shortcuts = false;
    CHECK(classify(8, 280, plain).proper == Tristate::yes);
}

TEST_CASE("dual verdicts follow the substitution identities") {
    ClassifyOptions dual;
    dual.dual = true;

    const Verdict bad = classify(9, 320, dual);
    CHECK(bad.dual);
    CHECK(bad.satisfactory == Tristate::no);
    CHECK(bad.good == Tristate::no);
    CHECK(bad.proper == Tristate::no);

    // When the min-term bound fails at small k, the dual is proper.
    for (int k = 4; k <= 6; ++k) {
        const long long base = 1LL << (k - 1);
        for (long long n : {base + 1, base + base / 2, 2 * base - 1}) {
            const Verdict v = classify(k, n, dual);
            CHECK(v.proper == Tristate::yes);
            CHECK(v.good == Tristate::yes);
            CHECK(v.satisfactory == Tristate::yes);
            check_chain(v);
        }
    }

    // Satisfactoriness transfers to the dual exactly: an exceed witness in
    // the weight-sum ratio translates to a dual evaluation above its bound.
    const UePolynomial ue320 = pue_of(9, 320);
    const MaxCompare mc =
        ratio_max_exceeds(weight_sum_poly(ue320), 320, Rat(pow2(9)) / Rat(pow2(320)));
    REQUIRE(mc.exceeds);
    const Rat p_star = (1 - mc.witness) / 2;
    CHECK(p_star > 0);
    CHECK(p_star < Rat(1, 2));
    CHECK(evaluate_dual(ue320, p_star) > Rat(1) / Rat(pow2(9)));

    // Grid consistency of the declared-proper dual: its undetected-error
    // derivative, expanded exactly, stays nonnegative.
    const UePolynomial ue40 = pue_of(6, 40);
    CHECK(is_proper_dual(ue40) == Tristate::yes);
    for (int i = 0; i <= 50; ++i) {
        const Rat p(i, 100);
        Rat psi = 0;
        for (const auto& [w, a] : ue40.terms)
            psi += Rat(a) * Rat(int_from(w)) * pow_rat(1 - 2 * p, (unsigned long)(w - 1));
        const Rat deriv = Rat(int_from(ue40.n)) * pow_rat(1 - p, (unsigned long)(ue40.n - 1)) -
                          Rat(2) / Rat(pow2(6)) * psi;
        CHECK(deriv >= 0);
    }

    // Dual satisfactoriness equals primal satisfactoriness on a full sweep.
    for (int k = 4; k <= 5; ++k) {
        for (long long n = (1LL << (k - 1)) + 1; n < (1LL << k); ++n) {
            const Verdict vd = classify(k, n, dual);
            const Verdict vp = classify(k, n);
            CHECK(vd.satisfactory == vp.satisfactory);
            check_chain(vd);
        }
    }
}

TEST_CASE("classification rejects out-of-domain lengths") {
    CHECK_THROWS_AS(classify(9, 256), std::invalid_argument);
    CHECK_THROWS_AS(classify(9, 255), std::invalid_argument);
    CHECK_THROWS_AS(is_proper(pue_of(9, 256)), std::invalid_argument);
    CHECK_THROWS_AS(sufficient_proper_intervals(9, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sufficient_proper_intervals(2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sufficient_proper_intervals(9, 1, 0), std::invalid_argument);
}
