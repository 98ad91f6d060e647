// Builders for the summary tables and the curve-sample grid.
#include "simplexdet/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "simplexdet/asymptotics.hpp"
#include "simplexdet/errors.hpp"
#include "simplexdet/params.hpp"
#include "simplexdet/scan.hpp"
#include "simplexdet/uepoly.hpp"
#include "simplexdet/weights.hpp"

namespace simplexdet {

namespace {

void check_deadline(const EngineBudget& budget, const char* where) {
    if (budget.deadline &&
        std::chrono::steady_clock::now() > *budget.deadline)
        throw budget_exhausted(std::string(where) + ": deadline exceeded");
}

std::string decimal_ll(long long v) { return std::to_string(v); }

std::string fixed_decimal(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// Tail scans are the dominant cost of tables 6, 7 and 8 and are pure
// functions of k, so one copy is kept per process.
const TailScan& shared_scan(int k, const EngineBudget& budget) {
    static std::mutex mutex;
    static std::map<int, TailScan> memo;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    TailScan scan = scan_tail(k, (1LL << (k - 5)) - 1, budget);
    return memo.emplace(k, std::move(scan)).first->second;
}

int caps_or(int value, int fallback) { return value != 0 ? value : fallback; }

void require_k_range(int min_k, int max_k, int lo, int hi, const char* what) {
    if (min_k < lo || max_k > hi || min_k > max_k)
        throw std::invalid_argument(std::string(what) + ": dimension range [" +
                                    std::to_string(min_k) + ", " +
                                    std::to_string(max_k) +
                                    "] outside the supported [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
}

// Table 1: the closed-form weight distribution at the band optimum.
void build_table1(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget&) {
    const int k = caps_or(caps.k, 9);
    const int m = caps_or(caps.m, 1);
    const long long n = band_midpoint(k, m);
    art.columns = {"w", "count"};
    art.notes.emplace_back("k", decimal_ll(k));
    art.notes.emplace_back("m", decimal_ll(m));
    art.notes.emplace_back("n", decimal_ll(n));
    const WeightDistribution dist = weight_distribution(k, n);
    art.rows.push_back({"0", "1"});
    for (const auto& [w, count] : dist.counts)
        art.rows.push_back({decimal_ll(w), to_decimal(count)});
}

// Table 2: least firing dimension per band, compressed to maximal runs
// where K(m) - 2m is constant.
void build_table2(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int max_m = caps_or(caps.max_m, 356);
    if (max_m < 1 || max_m > 4096)
        throw std::invalid_argument("table 2: max_m outside [1, 4096]");
    art.columns = {"m_lo", "m_hi", "k_offset"};
    int run_lo = 0, run_offset = 0;
    for (int m = 1; m <= max_m; ++m) {
        check_deadline(budget, "table 2");
        const int offset = dimension_threshold(m).least_dimension - 2 * m;
        if (run_lo == 0) {
            run_lo = m;
            run_offset = offset;
        } else if (offset != run_offset) {
            art.rows.push_back({decimal_ll(run_lo), decimal_ll(m - 1),
                                decimal_ll(run_offset)});
            run_lo = m;
            run_offset = offset;
        }
    }
    art.rows.push_back(
        {decimal_ll(run_lo), decimal_ll(max_m), decimal_ll(run_offset)});
}

// Table 3: maximal runs of lengths where the minimum-term test fires,
// swept exhaustively and split at band boundaries.
void build_table3(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int min_k = caps_or(caps.min_k, 9);
    const int max_k = caps_or(caps.max_k, 14);
    require_k_range(min_k, max_k, 4, 18, "table 3");
    art.columns = {"k", "m", "lo", "hi"};
    for (int k = min_k; k <= max_k; ++k) {
        bool open = false;
        int run_m = 0;
        long long run_lo = 0, prev = 0;
        auto flush = [&] {
            if (open)
                art.rows.push_back({decimal_ll(k), decimal_ll(run_m),
                                    decimal_ll(run_lo), decimal_ll(prev)});
            open = false;
        };
        const long long n_hi = (1LL << k) - 1;
        for (long long n = 1LL << (k - 1); n <= n_hi; ++n) {
            if ((n & 1023) == 0) check_deadline(budget, "table 3");
            if (!ugly_by_min_term(k, n)) {
                flush();
                continue;
            }
            const int m = band_index(k, n);
            if (open && m == run_m && n == prev + 1) {
                prev = n;
                continue;
            }
            flush();
            open = true;
            run_m = m;
            run_lo = prev = n;
        }
        flush();
    }
}

// Table 4: minimum-weight count against the firing threshold
// 2^{k - n + n h(d/n)} at the six sampled lengths around the interior
// gap of the first k=17 band.
void build_table4(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int k = caps_or(caps.k, 17);
    if (k != 17)
        throw std::invalid_argument(
            "table 4: only the k = 17 sample lengths are defined");
    static const long long sample_lengths[] = {66545, 66546, 66560,
                                               66561, 66592, 66593};
    art.columns = {"n", "min_weight_count", "min_term_threshold"};
    art.notes.emplace_back("k", decimal_ll(k));
    for (long long n : sample_lengths) {
        check_deadline(budget, "table 4");
        const MinWeight mw = min_weight_term(k, n);
        const CReal h = entropy(Rat(int_from(mw.d), int_from(n)));
        const CReal exponent =
            CReal::from_long(k - n, 256) + CReal::from_long(n, 256) * h;
        const double threshold = exponent.exp2().midpoint_double();
        art.rows.push_back({decimal_ll(n), to_decimal(mw.a_d),
                            fixed_decimal(threshold, 1)});
    }
}

// Table 5: maximal proper ranges across the first band at copy count 1.
void build_table5(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int min_k = caps_or(caps.min_k, 9);
    const int max_k = caps_or(caps.max_k, 12);
    require_k_range(min_k, max_k, 6, 18, "table 5");
    art.columns = {"k", "lo", "hi"};
    for (int k = min_k; k <= max_k; ++k) {
        long long run_lo = 0, prev = 0;
        auto flush = [&] {
            if (run_lo != 0)
                art.rows.push_back(
                    {decimal_ll(k), decimal_ll(run_lo), decimal_ll(prev)});
            run_lo = 0;
        };
        const long long n_hi = 3LL << (k - 2);
        for (long long n = (1LL << (k - 1)) + 1; n <= n_hi; ++n) {
            const UePolynomial ue = pue_of(k, n);
            const Tristate proper = is_proper(ue, false, budget);
            if (proper == Tristate::unknown)
                throw budget_exhausted("table 5: properness undecided at n = " +
                                       std::to_string(n));
            if (proper != Tristate::yes) {
                flush();
                continue;
            }
            if (run_lo != 0 && n == prev + 1) {
                prev = n;
                continue;
            }
            flush();
            run_lo = prev = n;
        }
        flush();
    }
}

// Table 6: copy-count thresholds per dimension. The tail threshold
// column is filled from a full scan up to full_tail_to and left empty
// beyond it.
void build_table6(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int min_k = caps_or(caps.min_k, 6);
    const int max_k = caps_or(caps.max_k, 20);
    require_k_range(min_k, max_k, 6, 24, "table 6");
    // full_tail_to: 0 keeps the default, negative disables scanning.
    const int full_to =
        caps.full_tail_to < 0 ? 0 : caps_or(caps.full_tail_to, 12);
    if (full_to > 16)
        throw std::invalid_argument("table 6: full_tail_to above 16");
    art.columns = {"k",              "min_term_floor", "first_proper_mid",
                   "tail_threshold", "model_ceil",     "tail_cap"};
    for (int k = min_k; k <= max_k; ++k) {
        check_deadline(budget, "table 6");
        const TailScan* scan =
            k <= full_to ? &shared_scan(k, budget) : nullptr;
        const TailThresholds th = tail_thresholds(k, budget, scan);
        art.rows.push_back(
            {decimal_ll(k), decimal_ll(th.min_term_floor),
             decimal_ll(th.first_proper_mid),
             th.tail_threshold ? decimal_ll(*th.tail_threshold)
                               : std::string(),
             decimal_ll(th.model_ceil), decimal_ll(1LL << (k - 5))});
    }
}

// Table 7: improper length sets from the full tail scan, one row per
// maximal range, grouped by band index and copy count.
void build_table7(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int min_k = caps_or(caps.min_k, 9);
    const int max_k = caps_or(caps.max_k, 12);
    require_k_range(min_k, max_k, 6, 16, "table 7");
    art.columns = {"k", "m", "t", "lo", "hi"};
    for (int k = min_k; k <= max_k; ++k) {
        const TailScan& scan = shared_scan(k, budget);
        std::vector<std::tuple<int, long long, long long, long long>> rows;
        for (const ImproperSet& set : scan.improper)
            for (const ImproperRange& range : set.ranges)
                rows.emplace_back(set.m, set.t, range.lo, range.hi);
        std::sort(rows.begin(), rows.end());
        for (const auto& [m, t, lo, hi] : rows)
            art.rows.push_back({decimal_ll(k), decimal_ll(m), decimal_ll(t),
                                decimal_ll(lo), decimal_ll(hi)});
    }
}

// Table 8: proper length census against its closed-form floor.
void build_table8(TableArtifact& art, const TableCaps& caps,
                  const EngineBudget& budget) {
    const int min_k = caps_or(caps.min_k, 6);
    const int max_k = caps_or(caps.max_k, 12);
    require_k_range(min_k, max_k, 6, 16, "table 8");
    art.columns = {"k", "proper_count", "count_floor"};
    for (int k = min_k; k <= max_k; ++k) {
        const ProperCensus census =
            proper_census(k, budget, &shared_scan(k, budget));
        art.rows.push_back({decimal_ll(k), decimal_ll(census.proper_count),
                            decimal_ll(census.count_floor)});
    }
}

using Builder = void (*)(TableArtifact&, const TableCaps&,
                         const EngineBudget&);

constexpr Builder kBuilders[] = {build_table1, build_table2, build_table3,
                                 build_table4, build_table5, build_table6,
                                 build_table7, build_table8};

std::string csv_safe(std::string s) {
    for (char& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

bool plain_number(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    std::size_t digits = 0, dots = 0;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (++dots > 1 || digits == 0) return false;
        } else if (s[i] >= '0' && s[i] <= '9') {
            ++digits;
        } else {
            return false;
        }
    }
    if (s.back() == '.') return false;
    // Longer integer literals could exceed double precision in JSON
    // consumers, so they stay strings.
    if (dots == 0 && digits > 15) return false;
    return true;
}

void append_json_cell(std::string& out, const std::string& cell) {
    if (plain_number(cell))
        out += cell;
    else
        append_json_string(out, cell);
}

}  // namespace

std::string TableArtifact::csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    if (truncated) {
        out += "truncated";
        out += ',';
        out += csv_safe(truncation_note);
        for (std::size_t i = 2; i < columns.size(); ++i) out += ',';
        out += '\n';
    }
    return out;
}

std::string TableArtifact::json() const {
    std::string out = "{\"table_id\":" + std::to_string(table_id);
    out += ",\"columns\":[";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        append_json_string(out, columns[i]);
    }
    out += "],\"rows\":[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) out += ',';
        out += '[';
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i) out += ',';
            append_json_cell(out, rows[r][i]);
        }
        out += ']';
    }
    out += "],\"notes\":{";
    for (std::size_t i = 0; i < notes.size(); ++i) {
        if (i) out += ',';
        append_json_string(out, notes[i].first);
        out += ':';
        append_json_string(out, notes[i].second);
    }
    out += "},\"truncated\":";
    out += truncated ? "true" : "false";
    out += ",\"truncation_note\":";
    append_json_string(out, truncation_note);
    out += '}';
    return out;
}

TableArtifact run_table(int table_id, const TableCaps& caps,
                        const EngineBudget& budget) {
    if (table_id < 1 || table_id > 8)
        throw std::invalid_argument("table id outside [1, 8]");
    TableArtifact art;
    art.table_id = table_id;
    try {
        kBuilders[table_id - 1](art, caps, budget);
    } catch (const budget_exhausted& e) {
        art.truncated = true;
        art.truncation_note = e.what();
    }
    return art;
}

TableArtifact figure_curve(int k, long long n, int samples,
                           const EngineBudget& budget) {
    if (samples < 2 || samples > 100000)
        throw std::invalid_argument("figure: samples outside [2, 100000]");
    TableArtifact art;
    art.table_id = 0;
    const UePolynomial ue = pue_of(k, n);
    art.columns = {"p", "log2_total"};
    for (const auto& [w, count] : ue.terms) {
        (void)count;
        art.columns.push_back("log2_term_" + decimal_ll(w));
    }
    art.columns.push_back("log2_bound");
    art.notes.emplace_back("k", decimal_ll(k));
    art.notes.emplace_back("n", decimal_ll(n));

    const std::string bound_text = decimal_ll(k - n);
    auto log2_text = [](const Rat& v) {
        if (v == 0) return std::string("-inf");
        return fixed_decimal(CReal::from_rat(v, 128).log2().midpoint_double(),
                             6);
    };
    for (int i = 1; i <= samples; ++i) {
        check_deadline(budget, "figure");
        const Rat p(i, 2 * samples);
        std::vector<std::string> row;
        row.push_back(fixed_decimal(p.get_d(), 6));
        Rat total = 0;
        std::vector<Rat> term_values;
        term_values.reserve(ue.terms.size());
        for (const auto& [w, count] : ue.terms) {
            Rat value = Rat(count) * pow_p_q(p, static_cast<unsigned long>(w),
                                             static_cast<unsigned long>(n - w));
            total += value;
            term_values.push_back(value);
        }
        row.push_back(log2_text(total));
        for (const Rat& value : term_values) row.push_back(log2_text(value));
        row.push_back(bound_text);
        art.rows.push_back(std::move(row));
    }

    // Crossings of the total against the 2^{k-n} reference, each
    // bracketed to width 1e-4 by exact bisection.
    const Rat bound = Rat(1) / Rat(pow2(static_cast<unsigned long>(n - k)));
    auto above = [&](const Rat& p) { return evaluate(ue, p) >= bound; };
    const int grid = 512;
    bool prev_above = false;  // limit at p = 0 is 0 < bound
    Rat prev_p(0);
    const Rat width_cap(1, 10000);
    for (int i = 1; i <= grid; ++i) {
        check_deadline(budget, "figure");
        const Rat p(i, 2 * grid);
        const bool now_above = above(p);
        if (now_above != prev_above) {
            Rat lo = prev_p, hi = p;
            while (hi - lo > width_cap) {
                const Rat mid = (lo + hi) / 2;
                if (above(mid) == now_above)
                    hi = mid;
                else
                    lo = mid;
            }
            art.notes.emplace_back(
                now_above ? "crossing_up" : "crossing_down",
                fixed_decimal(lo.get_d(), 6) + ".." +
                    fixed_decimal(hi.get_d(), 6));
        }
        prev_above = now_above;
        prev_p = p;
    }
    return art;
}

std::string verdict_json(const Verdict& v) {
    std::string out = "{\"k\":" + std::to_string(v.k);
    out += ",\"n\":" + std::to_string(v.n);
    out += ",\"dual\":";
    out += v.dual ? "true" : "false";
    out += ",\"proper\":";
    append_json_string(out, to_string(v.proper));
    out += ",\"good\":";
    append_json_string(out, to_string(v.good));
    out += ",\"satisfactory\":";
    append_json_string(out, to_string(v.satisfactory));
    out += ",\"ugly_by_min_term\":";
    out += v.ugly_by_min_term ? "true" : "false";
    out += ",\"ugly_witness_weight\":";
    out += v.ugly_witness_weight ? std::to_string(*v.ugly_witness_weight)
                                 : std::string("null");
    out += ",\"decided_by\":";
    append_json_string(out, to_string(v.decided_by));
    out += '}';
    return out;
}

std::string interval_text(long long lo, long long hi) {
    return std::to_string(lo) + ".." + std::to_string(hi);
}

std::string json_integer(const Int& v) {
    const Int limit = pow2(53);
    if (v < limit && v > -limit) return to_decimal(v);
    std::string out;
    append_json_string(out, to_decimal(v));
    return out;
}

}  // namespace simplexdet
