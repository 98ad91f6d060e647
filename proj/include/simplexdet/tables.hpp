// Canonical emission of the library's summary tables and figure data.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "simplexdet/bigint.hpp"
#include "simplexdet/classifier.hpp"
#include "simplexdet/sparsepoly.hpp"

namespace simplexdet {

// Scope overrides for run_table; a zero field keeps the table's default.
struct TableCaps {
    int k = 0;            // tables 1 and 4: dimension
    int m = 0;            // table 1: band index
    int max_m = 0;        // table 2: largest band index (default 356)
    int min_k = 0;        // ranged tables 3, 5, 6, 7, 8
    int max_k = 0;
    int full_tail_to = 0; // table 6: largest k whose tail threshold is
                          // resolved by a full scan (default 12)
};

// One emitted table: a header, string-valued rows, and key/value notes
// carrying scalars that do not fit the row grid. csv() and json() are
// deterministic byte-for-byte for identical inputs.
struct TableArtifact {
    int table_id = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> notes;
    bool truncated = false;
    std::string truncation_note;

    std::string csv() const;
    std::string json() const;
};

// Table ids:
//   1  weight distribution at a band-optimal length (default k=9, m=1)
//   2  least firing dimension per band, compressed to runs of constant
//      offset K(m) - 2m (default m <= 356)
//   3  lengths where the minimum-term test fires, per dimension and
//      band (default k in [9, 14])
//   4  minimum-weight count against the firing threshold at the six
//      sampled lengths around the k=17 interior gap
//   5  maximal proper ranges in the first band at copy count 1
//      (default k in [9, 12])
//   6  copy-count thresholds per dimension (default k in [6, 20],
//      full scans up to k = 12)
//   7  improper length sets from the full tail scan (default k in [9, 12])
//   8  proper length census and its closed-form floor (default k in [6, 12])
TableArtifact run_table(int table_id, const TableCaps& caps = {},
                        const EngineBudget& budget = {});

// Sample grid for the undetected-error curve of the default k=9, n=320
// code: log2 of the total and of each weight-class term against the
// 2^{k-n} reference, sampled at p = i/(2*samples). The notes carry the
// up- and down-crossings of the total against the reference, each
// bracketed to width 1e-4 in p.
TableArtifact figure_curve(int k = 9, long long n = 320, int samples = 200,
                           const EngineBudget& budget = {});

// Fixed-field JSON rendering of a classification verdict, shared by the
// command-line tool, the cache payloads and the tests.
std::string verdict_json(const Verdict& v);

// "a..b" (a == b still prints both endpoints).
std::string interval_text(long long lo, long long hi);

// JSON token for an integer: bare below 2^53 in magnitude, a quoted
// decimal string above, where doubles would lose precision.
std::string json_integer(const Int& v);

}  // namespace simplexdet
