// Append-only verdict cache: one checksummed record per line.
#include "simplexdet/cache.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace simplexdet {

namespace {

constexpr const char* kLineTag = "sdc1";
constexpr const char* kFileName = "verdicts.log";

// FNV-1a, 64 bit. The checksum only needs to catch truncated or mangled
// lines, not adversarial tampering.
std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

// Body covered by the checksum. Fields are separated by single spaces;
// the payload is the tail and may itself contain spaces.
std::string record_body(const CacheRecord& rec) {
    std::ostringstream os;
    os << rec.key.k << ' ' << rec.key.n << ' ' << rec.key.variant << ' '
       << rec.key.code_version << ' ' << rec.timestamp << ' ' << rec.payload;
    return os.str();
}

bool token_ok(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c == ' ' || c == '\n' || c == '\r' || c == '|') return false;
    return true;
}

bool parse_line(const std::string& line, CacheRecord* rec) {
    std::istringstream is(line);
    std::string tag, sum;
    if (!(is >> tag >> sum)) return false;
    if (tag != kLineTag || sum.size() != 16) return false;
    CacheRecord r;
    if (!(is >> r.key.k >> r.key.n >> r.key.variant >> r.key.code_version >>
          r.timestamp))
        return false;
    if (is.get() == ' ')
        std::getline(is, r.payload);
    else if (!is.eof())
        return false;
    if (hex64(fnv1a64(record_body(r))) != sum) return false;
    *rec = r;
    return true;
}

}  // namespace

const std::string& cache_code_version() {
    static const std::string v = "simplexdet-1";
    return v;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("SIMPLEXDET_CACHE_DIR"); env && *env)
        return env;
    return "./.cache";
}

VerdictCache::MapKey VerdictCache::map_key(const CacheKey& key) {
    return {key.k, key.n, key.variant,
            key.code_version.empty() ? cache_code_version()
                                     : key.code_version};
}

VerdictCache::VerdictCache(const std::string& dir) {
    std::filesystem::create_directories(dir);
    path_ = (std::filesystem::path(dir) / kFileName).string();
    load();
}

void VerdictCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CacheRecord rec;
        if (!parse_line(line, &rec)) {
            ++corrupt_;
            continue;
        }
        auto key = map_key(rec.key);
        if (index_.count(key)) {
            // Duplicate keys can only come from interleaved writers; the
            // first record stays authoritative.
            continue;
        }
        index_.emplace(std::move(key), order_.size());
        order_.push_back(std::move(rec));
    }
}

std::optional<std::string> VerdictCache::lookup(const CacheKey& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(map_key(key));
    if (it == index_.end()) return std::nullopt;
    return order_[it->second].payload;
}

std::string VerdictCache::store(const CacheKey& key,
                                const std::string& payload) {
    CacheRecord rec;
    rec.key = key;
    if (rec.key.code_version.empty()) rec.key.code_version = cache_code_version();
    if (!token_ok(rec.key.variant) || !token_ok(rec.key.code_version))
        throw std::invalid_argument(
            "cache: variant and code_version must be non-empty and free of "
            "spaces, pipes and newlines");
    if (payload.find('\n') != std::string::npos ||
        payload.find('\r') != std::string::npos)
        throw std::invalid_argument("cache: payload must be a single line");
    rec.timestamp = static_cast<long long>(std::time(nullptr));
    rec.payload = payload;

    std::lock_guard<std::mutex> lock(mutex_);
    auto mk = map_key(rec.key);
    if (auto it = index_.find(mk); it != index_.end())
        return order_[it->second].payload;

    std::string body = record_body(rec);
    std::ofstream out(path_, std::ios::app);
    if (!out)
        throw std::runtime_error("cache: cannot open " + path_ +
                                 " for append");
    out << kLineTag << ' ' << hex64(fnv1a64(body)) << ' ' << body << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("cache: write to " + path_ + " failed");

    index_.emplace(std::move(mk), order_.size());
    order_.push_back(std::move(rec));
    return payload;
}

std::size_t VerdictCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return order_.size();
}

long long VerdictCache::corrupt_lines() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return corrupt_;
}

std::vector<CacheRecord> VerdictCache::records() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return order_;
}

}  // namespace simplexdet
