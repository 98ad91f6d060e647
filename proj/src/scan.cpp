/*
 * Residual-class tail scans: per-residual lifting closure, parallel
 * orchestration, and the deterministic merge into band tallies.
 */
#include "simplexdet/scan.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "simplexdet/errors.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/uepoly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simplexdet {
namespace {

struct ResidualOut {
    long long closure_t = 0;  // first t whose skip check is proper; t_cap + 1 if none
    std::vector<long long> improper_t;
};

ResidualOut scan_residual(int k, long long n_prime, long long t_cap,
                          const EngineBudget& budget) {
    ResidualOut out;
    out.closure_t = t_cap + 1;
    for (long long t = 1; t <= t_cap; ++t) {
        const long long n = ((t - 1) << (k - 1)) + n_prime;
        const UePolynomial ue = pue_of(k, n);
        if (is_proper(ue, true, budget) == Tristate::yes) {
            out.closure_t = t;
            break;
        }
        const Tristate full = is_proper(ue, false, budget);
        if (full == Tristate::unknown)
            throw budget_exhausted("scan_tail: properness undecided at k=" +
                                   std::to_string(k) + " n=" + std::to_string(n));
        if (full == Tristate::no) out.improper_t.push_back(t);
    }
    return out;
}

void validate(int k, long long t_cap) {
    if (k < 2 || k > 24) throw std::invalid_argument("scan_tail: k out of range");
    if (t_cap < 1 || t_cap > (1LL << (60 - k)))
        throw std::invalid_argument("scan_tail: t_cap out of range");
}

TailScan merge(int k, long long t_cap, const std::vector<ResidualOut>& rows) {
    TailScan s;
    s.k = k;
    s.t_cap = t_cap;
    s.census_lo = (1LL << (k - 1)) + 1;
    s.census_hi = ((t_cap + 1) << (k - 1)) - 1;
    s.census_size = s.census_hi - s.census_lo + 1;
    s.boundary_points = t_cap - 1;
    s.all_residuals_closed = true;
    for (const ResidualOut& r : rows)
        if (r.closure_t > t_cap) {
            s.all_residuals_closed = false;
            break;
        }

    std::map<std::pair<long long, int>, std::vector<long long>> cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const long long n_prime = s.census_lo + static_cast<long long>(i);
        const int m = band_index(k, n_prime);
        for (long long t : rows[i].improper_t)
            cells[{t, m}].push_back(((t - 1) << (k - 1)) + n_prime);
    }

    for (auto& [key, ns] : cells) {
        std::sort(ns.begin(), ns.end());
        ImproperSet set;
        set.t = key.first;
        set.m = key.second;
        ImproperRange run{ns.front(), ns.front()};
        for (std::size_t j = 1; j < ns.size(); ++j) {
            if (ns[j] == run.hi + 1) {
                run.hi = ns[j];
            } else {
                set.ranges.push_back(run);
                run = {ns[j], ns[j]};
            }
        }
        set.ranges.push_back(run);
        set.size = static_cast<long long>(ns.size());
        s.improper_total += set.size;
        s.tail_threshold = std::max(s.tail_threshold, set.t + 1);
        s.improper.push_back(std::move(set));
    }
    s.proper_count = s.census_size - s.improper_total;

    for (long long t = 1; t <= t_cap; ++t)
        for (int m = 1; m <= k - 1; ++m) {
            BandTally b;
            b.t = t;
            b.m = m;
            b.band_size = 1LL << (k - m - 1);
            auto it = cells.find({t, m});
            if (it != cells.end()) b.improper = static_cast<long long>(it->second.size());
            s.bands.push_back(b);
        }

    const long long mid1 = band_midpoint(k, 1);
    for (const ImproperSet& set : s.improper) {
        if (set.m != 1) continue;
        const long long target = ((set.t - 1) << (k - 1)) + mid1;
        bool hit = false;
        for (const ImproperRange& r : set.ranges)
            if (r.lo <= target && target <= r.hi) {
                hit = true;
                break;
            }
        if (!hit) s.mid_band_hit = false;
    }
    return s;
}

}  // namespace

TailScan scan_tail(int k, long long t_cap, const EngineBudget& budget) {
    validate(k, t_cap);
    const long long count = (1LL << (k - 1)) - 1;
    std::vector<ResidualOut> rows(static_cast<std::size_t>(count));
#ifdef _OPENMP
    std::atomic<bool> failed{false};
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            rows[static_cast<std::size_t>(i)] =
                scan_residual(k, (1LL << (k - 1)) + 1 + i, t_cap, budget);
        } catch (...) {
#pragma omp critical(scan_tail_err)
            {
                if (!err) err = std::current_exception();
            }
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (err) std::rethrow_exception(err);
#else
    for (long long i = 0; i < count; ++i)
        rows[static_cast<std::size_t>(i)] =
            scan_residual(k, (1LL << (k - 1)) + 1 + i, t_cap, budget);
#endif
    return merge(k, t_cap, rows);
}

TailScan scan_tail_serial(int k, long long t_cap, const EngineBudget& budget) {
    validate(k, t_cap);
    const long long count = (1LL << (k - 1)) - 1;
    std::vector<ResidualOut> rows(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i)
        rows[static_cast<std::size_t>(i)] =
            scan_residual(k, (1LL << (k - 1)) + 1 + i, t_cap, budget);
    return merge(k, t_cap, rows);
}

}  // namespace simplexdet
