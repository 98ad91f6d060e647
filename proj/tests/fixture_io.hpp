// Helpers for loading the expected-value CSV fixtures.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixture {

struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

inline Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            out.columns = split_line(line);
            first = false;
        } else {
            out.rows.push_back(split_line(line));
        }
    }
    return out;
}

inline std::string dir() {
#ifdef SIMPLEXDET_FIXTURE_DIR
    return SIMPLEXDET_FIXTURE_DIR;
#else
    return "tests/fixtures";
#endif
}

inline Csv load(const std::string& name) {
    return parse_csv(read_file(dir() + "/" + name));
}

// Rows of table <id> restricted to first-column values in [lo, hi].
inline std::vector<std::vector<std::string>> rows_with_k(const Csv& csv,
                                                         long long lo,
                                                         long long hi) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : csv.rows) {
        const long long k = std::stoll(row.at(0));
        if (k >= lo && k <= hi) out.push_back(row);
    }
    return out;
}

}  // namespace fixture
