#include "tangle/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <new>
#include <thread>
#include <unordered_map>
#include <vector>

#include "tangle/errors.hpp"
#include "tangle/state.hpp"

namespace tangle {

namespace {

// A state's accumulated weight, packed into one byte string:
//   [u16 nitems] then per item [u32 cell][u8 len][len x u64 coeff]
// cell = recorded leg pairs in the low 3 bytes (16*a+b each, ascending,
// 0 = unused slot) and p1 in the top byte; coeff j counts histories with j
// closed loops. Items are kept sorted by cell and coefficients exact, so the
// encoding is canonical regardless of accumulation order.
using Val = std::string;
using Level = std::unordered_map<std::string, Val>;

inline uint16_t rd16(const char* p) {
    uint16_t v;
    std::memcpy(&v, p, 2);
    return v;
}
inline uint32_t rd32(const char* p) {
    uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}
inline uint64_t rd64(const char* p) {
    uint64_t v;
    std::memcpy(&v, p, 8);
    return v;
}
inline void wr16(char* p, uint16_t v) { std::memcpy(p, &v, 2); }
inline void wr32(char* p, uint32_t v) { std::memcpy(p, &v, 4); }
inline void wr64(char* p, uint64_t v) { std::memcpy(p, &v, 8); }

inline uint32_t pack_pair(int a, int b) { return static_cast<uint32_t>(a * 16 + b); }

inline uint32_t cell_with_pair(uint32_t cell, uint32_t pair_byte) {
    uint8_t out[4];
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        uint8_t b = static_cast<uint8_t>(cell >> (8 * i));
        if (b) out[n++] = b;
    }
    out[n++] = static_cast<uint8_t>(pair_byte);
    std::sort(out, out + n);
    uint32_t r = cell & 0xff000000u;
    for (int i = 0; i < n; ++i) r |= static_cast<uint32_t>(out[i]) << (8 * i);
    return r;
}

inline int cell_p1(uint32_t cell) { return static_cast<int>(cell >> 24); }

std::vector<std::pair<int, int>> cell_pairs(uint32_t cell) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 3; ++i) {
        uint8_t b = static_cast<uint8_t>(cell >> (8 * i));
        if (b) pairs.emplace_back(b >> 4, b & 15);
    }
    return pairs;
}

// f(cell, len, coeff_bytes) for every item.
template <class F>
void for_items(const Val& v, F&& f) {
    if (v.empty()) return;
    uint16_t n = rd16(v.data());
    size_t off = 2;
    for (uint16_t i = 0; i < n; ++i) {
        uint32_t cell = rd32(v.data() + off);
        int len = static_cast<uint8_t>(v[off + 4]);
        f(cell, len, v.data() + off + 5);
        off += 5 + static_cast<size_t>(len) * 8;
    }
}

// Add `len` coefficients (shifted up by `kshift` loops) into the cell bucket.
void val_add(Val& v, uint32_t cell, const char* coeffs, int len, int kshift) {
    const int nlen = len + kshift;
    if (v.empty()) {
        v.assign(2, '\0');
    }
    uint16_t n = rd16(v.data());
    size_t off = 2;
    size_t insert_at = v.size();
    for (uint16_t i = 0; i < n; ++i) {
        uint32_t c = rd32(v.data() + off);
        int l = static_cast<uint8_t>(v[off + 4]);
        if (c == cell) {
            if (l < nlen) {
                v.insert(off + 5 + static_cast<size_t>(l) * 8,
                         static_cast<size_t>(nlen - l) * 8, '\0');
                v[off + 4] = static_cast<char>(nlen);
            }
            for (int j = 0; j < len; ++j) {
                char* slot = v.data() + off + 5 + static_cast<size_t>(j + kshift) * 8;
                uint64_t cur = rd64(slot), add = rd64(coeffs + j * 8);
                uint64_t sum = cur + add;
                if (sum < cur) throw Error("diagram counter overflow (64-bit)");
                wr64(slot, sum);
            }
            return;
        }
        if (c > cell) {
            insert_at = off;
            break;
        }
        off += 5 + static_cast<size_t>(l) * 8;
    }
    std::string item(5 + static_cast<size_t>(nlen) * 8, '\0');
    wr32(item.data(), cell);
    item[4] = static_cast<char>(nlen);
    std::memcpy(item.data() + 5 + static_cast<size_t>(kshift) * 8, coeffs,
                static_cast<size_t>(len) * 8);
    v.insert(insert_at, item);
    wr16(v.data(), static_cast<uint16_t>(n + 1));
}

void merge_level(Level& dst, Level&& src) {
    while (!src.empty()) {
        auto node = src.extract(src.begin());
        auto it = dst.find(node.key());
        if (it == dst.end()) {
            dst.insert(std::move(node));
        } else {
            for_items(node.mapped(), [&](uint32_t cell, int len, const char* coeffs) {
                val_add(it->second, cell, coeffs, len, 0);
            });
        }
    }
}

// Apply gen to every entry of src, merging all emissions into dst. gen gets
// an emit(state_key, cell, coeffs, len, kshift) sink. Exact integer
// accumulation makes the result independent of worker count and merge order.
template <class Gen>
void fanout(const Level& src, Level& dst, int threads, Gen&& gen) {
    auto run = [&gen](auto begin, auto end, Level& target) {
        auto emit = [&target](const std::string& key, uint32_t cell, const char* coeffs,
                              int len, int kshift) {
            val_add(target.try_emplace(key).first->second, cell, coeffs, len, kshift);
        };
        for (auto it = begin; it != end; ++it) gen(it->first, it->second, emit);
    };
    if (threads <= 1 || src.size() < 1024) {
        run(src.begin(), src.end(), dst);
        return;
    }
    std::vector<const Level::value_type*> items;
    items.reserve(src.size());
    for (const auto& e : src) items.push_back(&e);
    int t = std::min<int>(threads, 64);
    std::vector<Level> locals(t);
    std::vector<std::thread> pool;
    size_t n = items.size();
    for (int w = 0; w < t; ++w) {
        size_t lo = n * w / t, hi = n * (w + 1) / t;
        pool.emplace_back([&, lo, hi, w] {
            auto emit = [&loc = locals[w]](const std::string& key, uint32_t cell,
                                           const char* coeffs, int len, int kshift) {
                val_add(loc.try_emplace(key).first->second, cell, coeffs, len, kshift);
            };
            for (size_t i = lo; i < hi; ++i) gen(items[i]->first, items[i]->second, emit);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& loc : locals) merge_level(dst, std::move(loc));
}

void put_u64(std::string& s, uint64_t v) {
    char b[8];
    std::memcpy(b, &v, 8);
    s.append(b, 8);
}

uint64_t get_u64(std::string_view s, size_t& off) {
    if (off + 8 > s.size()) throw ParseError("truncated frontier blob");
    uint64_t v;
    std::memcpy(&v, s.data() + off, 8);
    off += 8;
    return v;
}

std::string serialize_frontier(const Level& a) {
    std::vector<const Level::value_type*> items;
    items.reserve(a.size());
    for (const auto& e : a) items.push_back(&e);
    std::sort(items.begin(), items.end(), [](auto* x, auto* y) { return x->first < y->first; });
    std::string out;
    put_u64(out, items.size());
    for (auto* e : items) {
        put_u64(out, e->first.size());
        out += e->first;
        put_u64(out, e->second.size());
        out += e->second;
    }
    return out;
}

Level deserialize_frontier(std::string_view blob) {
    Level a;
    size_t off = 0;
    uint64_t n = get_u64(blob, off);
    for (uint64_t i = 0; i < n; ++i) {
        uint64_t klen = get_u64(blob, off);
        if (off + klen > blob.size()) throw ParseError("truncated frontier blob");
        std::string key(blob.substr(off, klen));
        off += klen;
        uint64_t vlen = get_u64(blob, off);
        if (off + vlen > blob.size()) throw ParseError("truncated frontier blob");
        a.emplace(std::move(key), std::string(blob.substr(off, vlen)));
        off += vlen;
    }
    if (off != blob.size()) throw ParseError("trailing bytes in frontier blob");
    return a;
}

LoopPoly to_loop_poly(const char* coeffs, int len) {
    std::vector<mpq_class> c;
    c.reserve(len);
    for (int i = 0; i < len; ++i) c.emplace_back(mpz_class(rd64(coeffs + i * 8)));
    return LoopPoly(std::move(c));
}

// The level engine. Levels are processed one vertex at a time: first the
// Close cascade (by descending point count, so each bucket is complete before
// it is processed), then the harvest of empty-state weights, then one vertex
// move per surviving state. The last `tail` levels feed no further full
// union, so their cascades may be run over bounded frontier slices that are
// freed right after harvest; weights add up exactly across slices, so counts
// are unchanged and only the per-level state statistic becomes a visit count
// (shared states are re-derived per slice).
struct Engine {
    int legs, max_vertices;
    bool track, tangencies;
    int threads;
    uint64_t shard_states;
    int stream_tail;
    CountTable* table;

    std::vector<uint64_t> visited;   // per level
    std::vector<double> seconds;     // per level

    void close_gen(const std::string& key, const Val& val, auto&& emit) const {
        EvoState s = decode_state(key);
        for (const auto& c : close_successors(s, track)) {
            std::string k2 = canonical_key(c.state);
            uint32_t pair_byte = c.leg_a ? pack_pair(c.leg_a, c.leg_b) : 0;
            int kshift = c.loop_closed ? 1 : 0;
            for_items(val, [&](uint32_t cell, int len, const char* coeffs) {
                emit(k2, pair_byte ? cell_with_pair(cell, pair_byte) : cell, coeffs, len,
                     kshift);
            });
        }
    }

    void vertex_gen(const std::string& key, const Val& val, auto&& emit) const {
        EvoState s = decode_state(key);
        std::string kc = canonical_key(crossing_successor(s));
        for_items(val, [&](uint32_t cell, int len, const char* coeffs) {
            emit(kc, cell + (1u << 24), coeffs, len, 0);
        });
        if (tangencies) {
            std::string ka = canonical_key(tangency_above_successor(s));
            std::string kb = canonical_key(tangency_below_successor(s));
            for_items(val, [&](uint32_t cell, int len, const char* coeffs) {
                emit(ka, cell, coeffs, len, 0);
                emit(kb, cell, coeffs, len, 0);
            });
        }
    }

    std::vector<Level> cascade(Level&& part) {
        int maxm = 0;
        for (const auto& e : part) maxm = std::max(maxm, int(uint8_t(e.first[0])));
        std::vector<Level> buckets(maxm / 2 + 1);
        while (!part.empty()) {
            auto node = part.extract(part.begin());
            buckets[uint8_t(node.key()[0]) / 2].insert(std::move(node));
        }
        for (int m = maxm; m >= 2; m -= 2)
            fanout(buckets[m / 2], buckets[m / 2 - 1], threads,
                   [this](const std::string& k, const Val& v, auto&& e) { close_gen(k, v, e); });
        return buckets;
    }

    // Each completed diagram has recorded a full leg pairing; at level v it
    // carries p1 crossings and v - p1 tangencies.
    void harvest(const Level& empties, int v) {
        for (const auto& [key, val] : empties) {
            for_items(val, [&](uint32_t cell, int len, const char* coeffs) {
                auto pairs = cell_pairs(cell);
                if (static_cast<int>(pairs.size()) != legs / 2)
                    throw Error("incomplete leg pairing at harvest");
                int p1 = cell_p1(cell);
                table->add(Pattern(std::move(pairs)), p1, v - p1, to_loop_poly(coeffs, len));
            });
        }
    }

    Level vertex_step(std::vector<Level>&& buckets) {
        Level next;
        for (size_t b = buckets.size(); b-- > 1;) {
            fanout(buckets[b], next, threads,
                   [this](const std::string& k, const Val& v, auto&& e) { vertex_gen(k, v, e); });
            buckets[b].clear();
        }
        return next;
    }

    // Slice-streamed processing of levels v..max_vertices.
    void stream(int v, Level&& input) {
        auto t0 = std::chrono::steady_clock::now();
        while (!input.empty()) {
            Level part;
            while (!input.empty() && part.size() < shard_states)
                part.insert(input.extract(input.begin()));
            auto buckets = cascade(std::move(part));
            for (const auto& b : buckets) visited[v] += b.size();
            harvest(buckets[0], v);
            if (v < max_vertices) {
                Level next = vertex_step(std::move(buckets));
                buckets.clear();
                auto pause = std::chrono::steady_clock::now();
                seconds[v] += std::chrono::duration<double>(pause - t0).count();
                stream(v + 1, std::move(next));
                t0 = std::chrono::steady_clock::now();
            }
        }
        seconds[v] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace

CountTable enumerate(int legs, int max_vertices, const EnumerateOptions& opt) {
    if (max_vertices < 0) throw Error("max_vertices must be >= 0");
    CountTable table(legs, max_vertices);

    Engine eng;
    eng.legs = legs;
    eng.max_vertices = max_vertices;
    eng.track = !opt.allow_disconnected;
    eng.tangencies = opt.allow_tangencies;
    eng.threads = opt.threads;
    eng.shard_states = opt.final_shard_states == 0 ? ~uint64_t(0) : opt.final_shard_states;
    eng.stream_tail = 2;
    eng.table = &table;
    eng.visited.assign(max_vertices + 1, 0);
    eng.seconds.assign(max_vertices + 1, 0.0);

    Level frontier;
    int start_level = 0;
    if (!opt.resume_frontier.empty() || opt.resume_level > 0) {
        frontier = deserialize_frontier(opt.resume_frontier);
        start_level = opt.resume_level;
        if (opt.resume_table)
            for (const auto& [key, poly] : opt.resume_table->entries()) {
                const auto& [pat, p1, p2] = key;
                table.add(pat, p1, p2, poly);
            }
    } else {
        Val one;
        char coeff[8];
        wr64(coeff, 1);
        val_add(one, 0, coeff, 1, 0);
        frontier.emplace(canonical_key(initial_state(legs, eng.track)), std::move(one));
    }

    int completed = start_level - 1;
    for (int v = start_level; v <= max_vertices; ++v) {
        try {
            // Ahead of the tail levels the full union is needed for the next
            // vertex step; inside the tail, slice-stream the rest of the run.
            if (v > max_vertices - eng.stream_tail && frontier.size() > eng.shard_states) {
                eng.stream(v, std::move(frontier));
                frontier.clear();
                for (int w = v; w <= max_vertices; ++w) {
                    completed = w;
                    if (opt.on_level) {
                        LevelCheckpoint cp;
                        cp.level = w;
                        cp.states = eng.visited[w];
                        cp.seconds = eng.seconds[w];
                        cp.table = &table;
                        cp.frontier = [] { return std::string(); };
                        opt.on_level(cp);
                    }
                }
                break;
            }

            auto t0 = std::chrono::steady_clock::now();
            auto buckets = eng.cascade(std::move(frontier));
            frontier.clear();
            uint64_t states = 0;
            for (const auto& b : buckets) states += b.size();
            eng.harvest(buckets[0], v);
            completed = v;
            if (v < max_vertices) frontier = eng.vertex_step(std::move(buckets));

            if (opt.on_level) {
                LevelCheckpoint cp;
                cp.level = v;
                cp.states = states;
                cp.seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                cp.table = &table;
                cp.frontier = [&frontier] { return serialize_frontier(frontier); };
                opt.on_level(cp);
            }
        } catch (const std::bad_alloc&) {
            // Clean stop: drop any partially harvested rows beyond the last
            // fully completed level.
            return table.truncated(completed);
        }
    }
    table.set_max_order(std::max(completed, -1));
    return table;
}

CountTable enumerate(int legs, int max_vertices, bool allow_tangencies,
                     bool allow_disconnected) {
    EnumerateOptions opt;
    opt.allow_tangencies = allow_tangencies;
    opt.allow_disconnected = allow_disconnected;
    return enumerate(legs, max_vertices, opt);
}

}  // namespace tangle
