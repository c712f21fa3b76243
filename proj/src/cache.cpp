#include "tangle/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tangle/errors.hpp"

namespace tangle {

namespace {

constexpr char kMagic[4] = {'T', 'N', 'G', 'C'};

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u32(std::istream& is, uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return true;
}

bool get_u64(std::istream& is, uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return true;
}

bool get_blob(std::istream& is, std::string& out) {
    uint64_t len;
    if (!get_u64(is, len)) return false;
    if (len > (1ull << 40)) return false;  // refuse absurd lengths from corrupt files
    out.resize(len);
    return static_cast<bool>(is.read(out.data(), static_cast<std::streamsize>(len)));
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string CacheKey::text() const {
    std::ostringstream os;
    os << "enumerate;legs=" << legs << ";max=" << max_vertices
       << ";tangencies=" << (tangencies ? 1 : 0)
       << ";disconnected=" << (disconnected ? 1 : 0);
    return os.str();
}

std::string cache_directory() {
    if (const char* dir = std::getenv("TANGLE_CACHE_DIR"); dir && *dir) return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::string(xdg) + "/tangle";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/tangle";
    return ".tangle-cache";
}

std::string cache_entry_path(const std::string& dir, const CacheKey& key) {
    return dir + "/" + key.hash() + ".tngc";
}

void write_cache_entry(const std::string& dir, const CacheKey& key, const CacheEntry& entry) {
    std::filesystem::create_directories(dir);
    const std::string path = cache_entry_path(dir, key);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write cache file " + tmp);
        os.write(kMagic, 4);
        put_u32(os, kCacheFormatVersion);
        const std::string id = key.text();
        put_u64(os, id.size());
        os.write(id.data(), static_cast<std::streamsize>(id.size()));
        os.put(entry.complete ? 1 : 0);
        put_u32(os, static_cast<uint32_t>(entry.level));
        std::ostringstream csv;
        entry.table.write_csv(csv);
        const std::string table_bytes = csv.str();
        put_u64(os, table_bytes.size());
        os.write(table_bytes.data(), static_cast<std::streamsize>(table_bytes.size()));
        put_u64(os, entry.frontier.size());
        os.write(entry.frontier.data(), static_cast<std::streamsize>(entry.frontier.size()));
        if (!os) throw Error("short write to cache file " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CacheEntry> read_cache_entry(const std::string& dir, const CacheKey& key) {
    std::ifstream is(cache_entry_path(dir, key), std::ios::binary);
    if (!is) return std::nullopt;
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4))
        return std::nullopt;
    uint32_t version;
    if (!get_u32(is, version)) return std::nullopt;
    if (version != kCacheFormatVersion)
        throw CacheVersionMismatch("cache entry has format version " + std::to_string(version) +
                                   ", this build reads " + std::to_string(kCacheFormatVersion));
    std::string id;
    if (!get_blob(is, id) || id != key.text()) return std::nullopt;
    CacheEntry entry;
    const int complete = is.get();
    if (complete != 0 && complete != 1) return std::nullopt;
    entry.complete = complete == 1;
    uint32_t level;
    if (!get_u32(is, level)) return std::nullopt;
    entry.level = static_cast<int>(level);
    std::string table_bytes;
    if (!get_blob(is, table_bytes)) return std::nullopt;
    std::istringstream csv(table_bytes);
    entry.table = CountTable::read_csv(csv);
    if (!get_blob(is, entry.frontier)) return std::nullopt;
    return entry;
}

}  // namespace tangle
