// Append-only on-disk cache for classification verdicts.
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace simplexdet {

// Identity of the decision procedures. Bumped whenever classification
// semantics change so records written by older builds are never returned.
const std::string& cache_code_version();

// Directory used when none is given: $SIMPLEXDET_CACHE_DIR, else ./.cache.
std::string default_cache_dir();

struct CacheKey {
    int k = 0;
    long long n = 0;
    std::string variant;       // "classify", "classify-dual", "skip-proper", ...
    std::string code_version;  // empty means cache_code_version()
};

struct CacheRecord {
    CacheKey key;
    long long timestamp = 0;   // seconds since the epoch, informational only
    std::string payload;
};

// Persistent key -> payload store backed by a single append-only file.
// Each record is one line; a line that fails its checksum or does not
// parse is skipped and counted, never trusted. Records are immutable:
// a second store under the same key keeps the first payload.
class VerdictCache {
  public:
    explicit VerdictCache(const std::string& dir = default_cache_dir());

    std::optional<std::string> lookup(const CacheKey& key) const;

    // Returns the payload now associated with the key; when the key was
    // already present that is the existing payload, not the argument.
    std::string store(const CacheKey& key, const std::string& payload);

    std::size_t size() const;
    long long corrupt_lines() const;
    std::vector<CacheRecord> records() const;
    const std::string& path() const { return path_; }

  private:
    using MapKey = std::tuple<int, long long, std::string, std::string>;

    static MapKey map_key(const CacheKey& key);
    void load();

    mutable std::mutex mutex_;
    std::string path_;
    long long corrupt_ = 0;
    std::map<MapKey, std::size_t> index_;  // key -> position in order_
    std::vector<CacheRecord> order_;
};

}  // namespace simplexdet
