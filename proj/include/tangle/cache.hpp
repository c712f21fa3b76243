#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "tangle/count_table.hpp"

namespace tangle {

// Bumped whenever the on-disk layout of cache entries changes; readers refuse
// other versions rather than guessing.
inline constexpr uint32_t kCacheFormatVersion = 1;

// 64-bit FNV-1a of `text`, as 16 lowercase hex digits. Stable across runs and
// platforms; used to key cache entries and stamp run manifests.
std::string fnv1a_hex(const std::string& text);

// Canonical identity of one enumeration run. Entries are keyed by the hash of
// text(), and a loaded entry is trusted only if its embedded text matches --
// never on filename alone.
struct CacheKey {
    int legs = 0;
    int max_vertices = 0;
    bool tangencies = false;
    bool disconnected = false;

    std::string text() const;
    std::string hash() const { return fnv1a_hex(text()); }
};

// One resumable snapshot: counts harvested through `level` plus the frontier
// entering level+1. `frontier` is empty when the run is complete or when the
// level was slice-streamed (those levels cannot be resumed from).
struct CacheEntry {
    int level = 0;
    bool complete = false;
    CountTable table;
    std::string frontier;
};

// $TANGLE_CACHE_DIR if set, else $XDG_CACHE_HOME/tangle, else ~/.cache/tangle.
std::string cache_directory();

std::string cache_entry_path(const std::string& dir, const CacheKey& key);

// Writes atomically (temp file + rename), creating `dir` if needed.
void write_cache_entry(const std::string& dir, const CacheKey& key, const CacheEntry& entry);

// Loads the entry for `key`. Returns nullopt when the file is missing,
// malformed, or was written for a different parameter set. Throws
// CacheVersionMismatch when the format version differs from
// kCacheFormatVersion.
std::optional<CacheEntry> read_cache_entry(const std::string& dir, const CacheKey& key);

}  // namespace tangle
