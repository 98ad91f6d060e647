// Tests for the sparse sign engine and the dense isolation cross-check.
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "simplexdet/bigint.hpp"
#include "simplexdet/densepoly.hpp"
#include "simplexdet/errors.hpp"
#include "simplexdet/sparsepoly.hpp"
#include "simplexdet/uepoly.hpp"
#include "simplexdet/weights.hpp"

using namespace simplexdet;

namespace {

SparsePoly poly(std::vector<std::pair<long long, long long>> terms) {
    std::vector<std::pair<long long, Int>> raw;
    for (auto [e, c] : terms) raw.emplace_back(e, int_from(c));
    return SparsePoly::from_terms(std::move(raw));
}

}  // namespace

TEST_CASE("properness polynomial shape and endpoint values") {
    struct Probe {
        int k;
        long long n;
    };
    for (Probe pr : {Probe{4, 11}, Probe{6, 48}, Probe{9, 320}, Probe{9, 384}, Probe{10, 676}}) {
        const UePolynomial ue = pue_of(pr.k, pr.n);
        const SparsePoly f = properness_polynomial(ue);
        CAPTURE(pr.k);
        CAPTURE(pr.n);
        // Constant term is A_d * d, value at 1 collapses to n.
        const MinWeight mw = min_weight_term(pr.k, pr.n);
        REQUIRE(!f.empty());
        CHECK(f.exps.front() == 0);
        CHECK(f.coefs.front() == mw.a_d * int_from(mw.d));
        CHECK(f.value_at_one() == int_from(pr.n));
        CHECK(f.terms() <= 2 * (std::size_t)pr.k + 2);
    }
}

TEST_CASE("skip variant drops the heaviest codeword") {
    const UePolynomial ue = pue_of(9, 320);
    const SparsePoly f = properness_polynomial(ue, true);
    // One codeword of weight 2^{k-1} t = 256 is excluded; its term in F(1)
    // was 2*256 - 320, so the total drops from 320 to 128.
    CHECK(f.value_at_one() == int_from(128));
    CHECK(f.coefs.front() == int_from(2 * 128));
}

TEST_CASE("sign_at exact fallback on razor-thin values") {
    // 3^100 u - 1 vanishes at u = 3^-100; float intervals cannot tell,
    // the exact integer route must.
    Int big = ipow(Int(3), 100);
    SparsePoly f;
    f.exps = {0, 1};
    f.coefs = {Int(-1), big};
    const Rat at_root = Rat(1) / Rat(big);
    CHECK(sign_at(f, at_root) == 0);
    CHECK(sign_at(f, at_root / 2) == -1);
    CHECK(sign_at(f, at_root * 2) == 1);
}

TEST_CASE("decompose_signs reports exact endpoint signs") {
    // (3u-1)(3u-2) = 9u^2 - 9u + 2, roots 1/3 and 2/3.
    const SparsePoly f = poly({{0, 2}, {1, -9}, {2, 9}});
    const SignDecomposition dec = decompose_signs(f);
    CHECK(dec.sign_near_zero == 1);
    CHECK(dec.sign_at_one == 1);
    for (const Zone& z : dec.zones) {
        CHECK(z.sign_a != 0);
        CHECK(z.sign_b != 0);
        CHECK(sgn(f.value_at(z.a)) == z.sign_a);
        CHECK(sgn(f.value_at(z.b)) == z.sign_b);
        CHECK(z.a < z.b);
    }
    // Every root lies strictly inside some zone, and zones stay interior
    // to (0,1).
    for (const Rat& root : {Rat(1, 3), Rat(2, 3)}) {
        bool covered = false;
        for (const Zone& z : dec.zones)
            if (z.a < root && root < z.b) covered = true;
        CHECK(covered);
    }
    for (const Zone& z : dec.zones) {
        CHECK(z.a > 0);
        CHECK(z.b < 1);
    }
}

TEST_CASE("nonnegative_on_unit hand polynomials") {
    // Negative dip between 1/3 and 2/3.
    const NonnegResult dip = nonnegative_on_unit(poly({{0, 2}, {1, -9}, {2, 9}}));
    CHECK(!dip.nonneg);
    CHECK(dip.witness > 0);
    CHECK(dip.witness < 1);
    CHECK(poly({{0, 2}, {1, -9}, {2, 9}}).value_at(dip.witness) < 0);

    // No real roots at all.
    CHECK(nonnegative_on_unit(poly({{0, 1}, {2, 1}})).nonneg);
    // Complex roots only (discriminant 25 - 36 < 0).
    CHECK(nonnegative_on_unit(poly({{0, 1}, {1, -5}, {2, 9}})).nonneg);
    // Monomial and near-trivial cases.
    CHECK(nonnegative_on_unit(poly({{3, 7}})).nonneg);
    CHECK(!nonnegative_on_unit(poly({{2, -1}})).nonneg);

    // Roots at the endpoints do not spoil interior nonnegativity:
    // u(1-u) = u - u^2.
    CHECK(nonnegative_on_unit(poly({{1, 1}, {2, -1}})).nonneg);
}

TEST_CASE("even-multiplicity touches exhaust the budget honestly") {
    // (2u-1)^2 touches zero at the dyadic point 1/2.
    CHECK_THROWS_AS(nonnegative_on_unit(poly({{0, 1}, {1, -4}, {2, 4}})), budget_exhausted);
    // (3u-1)^2 touches at the non-dyadic 1/3; cap the refinement depth so
    // the stall is detected quickly.
    EngineBudget small;
    small.max_bisect_bits = 64;
    CHECK_THROWS_AS(nonnegative_on_unit(poly({{0, 1}, {1, -6}, {2, 9}}), small), budget_exhausted);
}

TEST_CASE("tiny evaluation budget trips the breaker") {
    EngineBudget tiny;
    tiny.max_evals = 4;
    const SparsePoly f = properness_polynomial(pue_of(9, 320));
    CHECK_THROWS_AS(nonnegative_on_unit(f, tiny), budget_exhausted);
}

TEST_CASE("properness of pinned codes via the sparse engine") {
    struct Probe {
        int k;
        long long n;
        bool proper;
    };
    for (Probe pr : {Probe{9, 320, false}, Probe{9, 384, true}, Probe{9, 307, true},
                     Probe{9, 308, false}, Probe{4, 11, true}, Probe{3, 5, true}}) {
        CAPTURE(pr.k);
        CAPTURE(pr.n);
        const UePolynomial ue = pue_of(pr.k, pr.n);
        const SparsePoly f = properness_polynomial(ue);
        const NonnegResult r = nonnegative_on_unit(f);
        CHECK(r.nonneg == pr.proper);
        if (!r.nonneg) {
            CHECK(f.value_at(r.witness) < 0);
            // The witness certifies P' < 0 at p = u/(1+u); some step toward
            // 1/2 must therefore show a strict decrease.
            const Rat u = r.witness;
            const Rat p = u / (1 + u);
            const Rat base = evaluate(ue, p);
            Rat h = (Rat(1, 2) - p) / 2;
            bool decreased = false;
            for (int j = 0; j < 80 && !decreased; ++j, h /= 2) {
                decreased = evaluate(ue, p + h) < base;
            }
            CHECK(decreased);
        }
    }
}

TEST_CASE("ratio_max_exceeds on a bare monomial") {
    // S = x, N = 1: sup x/(1+x) on (0,1] is 1/2, attained at 1.
    const SparsePoly s = poly({{1, 1}});
    const MaxCompare over = ratio_max_exceeds(s, 1, Rat(1, 3));
    CHECK(over.exceeds);
    CHECK(over.witness / (1 + over.witness) > Rat(1, 3));
    CHECK(!ratio_max_exceeds(s, 1, Rat(1, 2)).exceeds);
    CHECK(!ratio_max_exceeds(s, 1, Rat(2, 3)).exceeds);
}

TEST_CASE("ratio_max_exceeds with a critical point at the right endpoint") {
    // S = x + x^7, N = 8: the critical polynomial vanishes at x = 1.
    const SparsePoly s = poly({{1, 1}, {7, 1}});
    const auto ratio = [&](const Rat& x) {
        return Rat(s.value_at(x) / pow_rat(1 + x, 8));
    };
    // Exact sample values are sound lower bounds on the sup.
    for (const Rat& x : {Rat(1, 7), Rat(1, 5), Rat(1, 2), Rat(1)}) {
        const Rat sample = ratio(x);
        CHECK(ratio_max_exceeds(s, 8, sample * Rat(99, 100)).exceeds);
    }
    // Coefficient domination S(x) < (1+x)^8 on (0,1] keeps the sup below 1.
    CHECK(!ratio_max_exceeds(s, 8, Rat(1)).exceeds);
    // Verify any exceed-witness exactly.
    const MaxCompare w = ratio_max_exceeds(s, 8, ratio(Rat(1, 7)) * Rat(99, 100));
    CHECK(w.witness > 0);
    CHECK(w.witness <= 1);
    CHECK(ratio(w.witness) > ratio(Rat(1, 7)) * Rat(99, 100));
}

TEST_CASE("goodness thresholds for pinned codes via ratio_max_exceeds") {
    // P_ue(p) = S(u)/(1+u)^n with u = p/(1-p); good means the sup over
    // p in (0,1/2] stays at the p = 1/2 value (2^k - 1) 2^-n.
    struct Probe {
        int k;
        long long n;
        bool good;
    };
    for (Probe pr : {Probe{9, 320, false}, Probe{9, 384, true}}) {
        CAPTURE(pr.n);
        const UePolynomial ue = pue_of(pr.k, pr.n);
        std::vector<std::pair<long long, Int>> raw(ue.terms.begin(), ue.terms.end());
        const SparsePoly s = SparsePoly::from_terms(std::move(raw));
        const Rat theta_good = (Rat(pow2(pr.k)) - 1) / Rat(pow2(pr.n));
        const MaxCompare over = ratio_max_exceeds(s, pr.n, theta_good);
        CHECK(over.exceeds == !pr.good);
        if (over.exceeds) {
            // Exact confirmation that P exceeds its half-point value.
            const Rat u = over.witness;
            const Rat p = u / (1 + u);
            CHECK(evaluate(ue, p) > value_at_half(ue));
        }
        // The satisfactory bound 2^{k-n} is looser by a hair.
        const Rat theta_sat = satisfactory_bound(pr.k, pr.n);
        const MaxCompare sat = ratio_max_exceeds(s, pr.n, theta_sat);
        CHECK(sat.exceeds == !pr.good);
    }
}

TEST_CASE("dense expansion matches the sparse form") {
    const SparsePoly f = properness_polynomial(pue_of(5, 21));
    const DensePoly g = dense_from_sparse(f, 1 << 20);
    for (const Rat& x : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(7, 9), Rat(1)}) {
        CHECK(g.value_at(x) == f.value_at(x));
    }
    CHECK_THROWS_AS(dense_from_sparse(f, 2), std::invalid_argument);
}

TEST_CASE("square-free certificates") {
    // (2u-1)^2 is not square-free.
    CHECK(!squarefree_certificate(dense_from_sparse(poly({{0, 1}, {1, -4}, {2, 4}}), 8)));
    // (3u-1)(3u-2) is.
    CHECK(squarefree_certificate(dense_from_sparse(poly({{0, 2}, {1, -9}, {2, 9}}), 8)));
    // Constants and linears trivially are.
    CHECK(squarefree_certificate(dense_from_sparse(poly({{0, 5}}), 8)));
    CHECK(squarefree_certificate(dense_from_sparse(poly({{0, -3}, {1, 2}}), 8)));
}

TEST_CASE("dense isolation brackets simple roots") {
    // (3u-1)(3u-2): two brackets or exact roots covering 1/3 and 2/3.
    const DensePoly f = dense_from_sparse(poly({{0, 2}, {1, -9}, {2, 9}}), 8);
    const Isolation iso = isolate_roots_01(f);
    const auto covers = [&](const Rat& root) {
        for (const auto& [a, b] : iso.brackets)
            if (a < root && root < b) return true;
        for (const Rat& r : iso.exact_roots)
            if (r == root) return true;
        return false;
    };
    CHECK(iso.brackets.size() + iso.exact_roots.size() == 2);
    CHECK(covers(Rat(1, 3)));
    CHECK(covers(Rat(2, 3)));

    // Sign change across every bracket when no dyadic roots interfere.
    for (const auto& [a, b] : iso.brackets) {
        CHECK(f.value_at(a) * f.value_at(b) < 0);
    }

    // (2u-1)(4u-1): the dyadic roots 1/2 and 1/4 are hit head-on or bracketed.
    const DensePoly g = dense_from_sparse(poly({{0, 1}, {1, -6}, {2, 8}}), 8);
    const Isolation gi = isolate_roots_01(g);
    CHECK(gi.brackets.size() + gi.exact_roots.size() == 2);
    for (const Rat& r : gi.exact_roots) CHECK(g.value_at(r) == 0);
    const auto gcovers = [&](const Rat& root) {
        for (const auto& [a, b] : gi.brackets)
            if (a < root && root < b) return true;
        for (const Rat& r : gi.exact_roots)
            if (r == root) return true;
        return false;
    };
    CHECK(gcovers(Rat(1, 2)));
    CHECK(gcovers(Rat(1, 4)));

    // No roots in (0,1) for u^2 + 1.
    const Isolation none = isolate_roots_01(dense_from_sparse(poly({{0, 1}, {2, 1}}), 8));
    CHECK(none.brackets.empty());
    CHECK(none.exact_roots.empty());
}

TEST_CASE("sparse and dense nonnegativity agree on code polynomials") {
    for (int k = 4; k <= 6; ++k) {
        for (long long n = (1LL << (k - 1)); n < (1LL << k); ++n) {
            CAPTURE(k);
            CAPTURE(n);
            const SparsePoly f = properness_polynomial(pue_of(k, n));
            bool sparse_ok = false, sparse_known = true;
            try {
                sparse_ok = nonnegative_on_unit(f).nonneg;
            } catch (const budget_exhausted&) {
                sparse_known = false;
            }
            bool dense_ok = false, dense_known = true;
            try {
                dense_ok = nonnegative_on_unit_dense(dense_from_sparse(f, 1 << 16)).nonneg;
            } catch (const budget_exhausted&) {
                dense_known = false;
            }
            if (sparse_known && dense_known) CHECK(sparse_ok == dense_ok);
            CHECK((sparse_known || dense_known));
        }
    }
}

TEST_CASE("sparse and dense nonnegativity agree on random square-free inputs") {
    std::mt19937 rng(20260816u);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> deg(2, 8);
    int tried = 0;
    for (int iter = 0; iter < 400 && tried < 120; ++iter) {
        const int d = deg(rng);
        std::vector<std::pair<long long, Int>> raw;
        for (int i = 0; i <= d; ++i) {
            const int c = coef(rng);
            if (c != 0) raw.emplace_back(i, Int(c));
        }
        SparsePoly f = SparsePoly::from_terms(std::move(raw));
        if (f.empty() || f.exps.front() != 0) continue;
        const DensePoly g = dense_from_sparse(f, 16);
        if (!squarefree_certificate(g)) continue;
        ++tried;
        CAPTURE(iter);
        bool sparse_ok = false, sparse_known = true;
        try {
            sparse_ok = nonnegative_on_unit(f).nonneg;
        } catch (const budget_exhausted&) {
            sparse_known = false;
        }
        const NonnegResult dense = nonnegative_on_unit_dense(g);
        if (sparse_known) CHECK(sparse_ok == dense.nonneg);
        if (!dense.nonneg) CHECK(g.value_at(dense.witness) < 0);
    }
    CHECK(tried >= 100);
}
