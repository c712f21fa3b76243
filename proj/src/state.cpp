#include "tangle/state.hpp"

#include <algorithm>

#include "tangle/errors.hpp"

namespace tangle {

namespace {

// Renumber group labels by first occurrence so equal partitions encode equally.
void canon_groups(std::vector<uint8_t>& g) {
    uint8_t remap[256];
    std::fill(std::begin(remap), std::end(remap), uint8_t(255));
    uint8_t next = 0;
    for (auto& x : g) {
        if (remap[x] == 255) remap[x] = next++;
        x = remap[x];
    }
}

}  // namespace

EvoState initial_state(int legs, bool track_groups) {
    if (legs != 2 && legs != 4 && legs != 6)
        throw UnsupportedLegCount("legs must be 2, 4 or 6, got " + std::to_string(legs));
    EvoState s;
    s.points.resize(legs);
    for (int i = 0; i < legs; ++i) s.points[i] = static_cast<int8_t>(-(i + 1));
    s.blocks = {static_cast<uint8_t>(legs)};
    if (track_groups) {
        s.groups.resize(legs);
        for (int i = 0; i < legs; ++i) s.groups[i] = static_cast<uint8_t>(i);
    }
    return s;
}

std::string canonical_key(const EvoState& s) {
    std::string key;
    const size_t m = s.points.size();
    key.reserve(3 + m + s.blocks.size() + s.groups.size());
    key.push_back(static_cast<char>(m));
    for (int8_t p : s.points) key.push_back(static_cast<char>(p));
    key.push_back(static_cast<char>(s.blocks.size()));
    for (uint8_t b : s.blocks) key.push_back(static_cast<char>(b));
    if (s.groups.empty()) {
        key.push_back(0);
    } else {
        key.push_back(1);
        std::vector<uint8_t> g = s.groups;
        canon_groups(g);
        for (uint8_t x : g) key.push_back(static_cast<char>(x));
    }
    return key;
}

EvoState decode_state(std::string_view key) {
    EvoState s;
    size_t i = 0;
    auto need = [&](size_t n) {
        if (i + n > key.size()) throw ParseError("truncated state key");
    };
    need(1);
    size_t m = static_cast<uint8_t>(key[i++]);
    need(m);
    s.points.resize(m);
    for (size_t j = 0; j < m; ++j) s.points[j] = static_cast<int8_t>(key[i++]);
    need(1);
    size_t nb = static_cast<uint8_t>(key[i++]);
    need(nb);
    s.blocks.resize(nb);
    for (size_t j = 0; j < nb; ++j) s.blocks[j] = static_cast<uint8_t>(key[i++]);
    need(1);
    bool has_groups = key[i++] != 0;
    if (has_groups) {
        need(m);
        s.groups.resize(m);
        for (size_t j = 0; j < m; ++j) s.groups[j] = static_cast<uint8_t>(key[i++]);
    }
    if (i != key.size()) throw ParseError("trailing bytes in state key");
    return s;
}

EvoState crossing_successor(const EvoState& s) {
    const int m = s.size();
    EvoState out;
    out.points.resize(m + 2);
    // Evolved top moves to position 1; new mutually partnered pair at 0 and 2.
    out.points[0] = 2;
    out.points[2] = 0;
    int8_t p0 = s.points[0];
    out.points[1] = p0 < 0 ? p0 : static_cast<int8_t>(p0 + 2);
    for (int i = 1; i < m; ++i) {
        int8_t v = s.points[i];
        out.points[i + 2] = v < 0 ? v : (v == 0 ? int8_t(1) : static_cast<int8_t>(v + 2));
    }
    out.blocks = s.blocks;
    out.blocks[0] += 2;
    if (!s.groups.empty()) {
        out.groups.resize(m + 2);
        uint8_t g0 = s.groups[0];
        out.groups[0] = out.groups[1] = out.groups[2] = g0;
        std::copy(s.groups.begin() + 1, s.groups.end(), out.groups.begin() + 3);
        canon_groups(out.groups);
    }
    return out;
}

EvoState tangency_above_successor(const EvoState& s) {
    const int m = s.size();
    EvoState out;
    out.points.resize(m + 2);
    out.points[0] = 1;
    out.points[1] = 0;
    for (int i = 0; i < m; ++i) {
        int8_t v = s.points[i];
        out.points[i + 2] = v < 0 ? v : static_cast<int8_t>(v + 2);
    }
    out.blocks = s.blocks;
    out.blocks[0] += 2;
    if (!s.groups.empty()) {
        out.groups.resize(m + 2);
        uint8_t g0 = s.groups[0];
        out.groups[0] = out.groups[1] = g0;
        std::copy(s.groups.begin(), s.groups.end(), out.groups.begin() + 2);
        canon_groups(out.groups);
    }
    return out;
}

EvoState tangency_below_successor(const EvoState& s) {
    const int m = s.size();
    EvoState out;
    out.points.resize(m + 2);
    int8_t p0 = s.points[0];
    out.points[0] = p0 < 0 ? p0 : (p0 == 0 ? int8_t(0) : static_cast<int8_t>(p0 + 2));
    out.points[1] = 2;
    out.points[2] = 1;
    for (int i = 1; i < m; ++i) {
        int8_t v = s.points[i];
        out.points[i + 2] = v < 0 ? v : (v == 0 ? int8_t(0) : static_cast<int8_t>(v + 2));
    }
    out.blocks = s.blocks;
    out.blocks[0] += 2;
    if (!s.groups.empty()) {
        out.groups.resize(m + 2);
        uint8_t g0 = s.groups[0];
        out.groups[1] = out.groups[2] = g0;
        out.groups[0] = g0;
        std::copy(s.groups.begin() + 1, s.groups.end(), out.groups.begin() + 3);
        canon_groups(out.groups);
    }
    return out;
}

std::vector<CloseResult> close_successors(const EvoState& s, bool connected_only) {
    std::vector<CloseResult> out;
    const int m = s.size();
    if (m == 0) return out;
    const int top = s.blocks[0];
    const bool track = !s.groups.empty();
    for (int qi = 1; qi < top; qi += 2) {
        int8_t x = s.points[0], y = s.points[qi];
        uint8_t ga = 0, gb = 0;
        if (track) {
            ga = s.groups[0];
            gb = s.groups[qi];
            if (connected_only && m > 2) {
                // Removing both endpoints must not finish a component early.
                bool survives = false;
                for (int i = 1; i < m && !survives; ++i)
                    if (i != qi && (s.groups[i] == ga || s.groups[i] == gb)) survives = true;
                if (!survives) continue;
            }
        }
        CloseResult r;
        r.q = qi + 1;
        std::vector<int8_t> pts(s.points);
        if (x == qi) {
            r.loop_closed = true;  // endpoints are mutual partners: weight n
        } else if (x < 0 && y < 0) {
            r.leg_a = std::min(-x, -y);
            r.leg_b = std::max(-x, -y);
        } else if (x < 0) {
            pts[y] = x;  // survivor inherits the leg token
        } else if (y < 0) {
            pts[x] = y;
        } else {
            pts[x] = y;  // splice the two strands
            pts[y] = x;
        }
        EvoState& t = r.state;
        t.points.reserve(m - 2);
        if (track) t.groups.reserve(m - 2);
        uint8_t gmerge = std::min(ga, gb);
        for (int i = 1; i < m; ++i) {
            if (i == qi) continue;
            int8_t v = pts[i];
            if (v >= 0) v = static_cast<int8_t>(v < qi ? v - 1 : v - 2);
            t.points.push_back(v);
            if (track) {
                uint8_t g = s.groups[i];
                t.groups.push_back(g == ga || g == gb ? gmerge : g);
            }
        }
        // Points trapped between the endpoints become the new topmost block.
        int trapped = qi - 1;
        int rest_top = top - qi - 1;
        if (trapped) t.blocks.push_back(static_cast<uint8_t>(trapped));
        if (rest_top) t.blocks.push_back(static_cast<uint8_t>(rest_top));
        t.blocks.insert(t.blocks.end(), s.blocks.begin() + 1, s.blocks.end());
        if (track) canon_groups(t.groups);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Successor> successors(const EvoState& s, bool allow_tangencies, bool connected_only) {
    std::vector<Successor> out;
    if (s.empty()) return out;
    out.push_back({Successor::Crossing, crossing_successor(s), false, 0, 0, 0});
    if (allow_tangencies) {
        out.push_back({Successor::TangencyAbove, tangency_above_successor(s), false, 0, 0, 0});
        out.push_back({Successor::TangencyBelow, tangency_below_successor(s), false, 0, 0, 0});
    }
    for (auto& c : close_successors(s, connected_only))
        out.push_back({Successor::Close, std::move(c.state), c.loop_closed, c.leg_a, c.leg_b, c.q});
    return out;
}

}  // namespace tangle
