#include "tangle/oracle.hpp"

#include <algorithm>
#include <map>

#include "tangle/errors.hpp"

namespace tangle {
namespace {

int stub_vertex(int legs, int stub) { return stub < legs ? -1 : (stub - legs) / 4; }

// Node ids for connectivity walks: internal vertex j -> j, leg i -> nv + i.
struct EdgeList {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;     // one per matched stub pair
    std::vector<int> internal;                  // indices of vertex-vertex edges
};

EdgeList edge_list(const CombinatorialMap& m) {
    const int nv = static_cast<int>(m.vtypes.size());
    EdgeList out;
    out.nodes = nv + m.legs;
    for (int a = 0; a < static_cast<int>(m.match.size()); ++a) {
        const int b = m.match[a];
        if (b <= a) continue;
        const int va = stub_vertex(m.legs, a);
        const int vb = stub_vertex(m.legs, b);
        out.edges.emplace_back(va < 0 ? nv + a : va, vb < 0 ? nv + b : vb);
        if (va >= 0 && vb >= 0) out.internal.push_back(static_cast<int>(out.edges.size()) - 1);
    }
    return out;
}

// Component label per node after removing the listed edges (-1 = isolated).
std::vector<int> components(const EdgeList& g, int skip1 = -1, int skip2 = -1) {
    std::vector<std::vector<int>> adj(g.nodes);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        if (i == skip1 || i == skip2) continue;
        adj[g.edges[i].first].push_back(g.edges[i].second);
        adj[g.edges[i].second].push_back(g.edges[i].first);
    }
    std::vector<int> comp(g.nodes, -1);
    std::vector<int> touched(g.nodes, 0);
    for (const auto& [a, b] : g.edges) touched[a] = touched[b] = 1;
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.nodes; ++s) {
        if (comp[s] >= 0 || !touched[s]) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

int component_count(const EdgeList& g) {
    auto comp = components(g);
    int n = 0;
    for (int c : comp) n = std::max(n, c + 1);
    return n;
}

struct Search {
    int legs, p1, p2;
    const OracleOptions* opts;
    uint64_t nodes = 0;
    std::vector<char> vtypes;
    std::vector<int> match;                 // stub -> stub, -1 free
    std::vector<std::vector<int>> faces;    // circular lists of free stubs
    std::map<std::pair<Pattern, int>, long> counts;

    void run() {
        match.assign(legs + 4 * (p1 + p2), -1);
        faces.assign(1, {});
        for (int i = 0; i < legs; ++i) faces[0].push_back(i);
        rec(0, 0);
    }

    void leaf() {
        CombinatorialMap m{legs, vtypes, match};
        if (opts->connected && component_count(edge_list(m)) != 1) return;
        auto [pattern, k] = trace_strands(m);
        verify_planar(m);
        ++counts[{pattern, k}];
        if (opts->on_map) opts->on_map(m, pattern, k);
    }

    // Faces of the completed map are the cycles of next-stub-counterclockwise
    // after crossing each edge; a planar map satisfies V - E + F = 2 with the
    // boundary counted as one vertex. Same-face matching should make this
    // automatic, so a violation means the enumerator itself is broken.
    void verify_planar(const CombinatorialMap& m) const {
        const int all = static_cast<int>(m.match.size());
        std::vector<char> seen(all, 0);
        int F = 0;
        for (int s = 0; s < all; ++s) {
            if (seen[s]) continue;
            ++F;
            int cur = s;
            while (!seen[cur]) {
                seen[cur] = 1;
                const int a = m.match[cur];
                if (a < legs)
                    cur = (a + 1) % legs;
                else
                    cur = legs + (a - legs) / 4 * 4 + ((a - legs) % 4 + 1) % 4;
            }
        }
        const int V = 1 + static_cast<int>(m.vtypes.size());
        const int E = all / 2;
        if (V - E + F != 2) throw Error("oracle produced a non-planar map");
    }

    void rec(int n1, int n2) {
        if (++nodes > opts->node_budget) throw BudgetExceeded("oracle search budget exceeded");
        // Lowest free stub drives the branching; first touch of each fresh
        // vertex fixes its label, so relabeled copies never appear.
        int h = -1, hface = -1, hpos = -1;
        for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi)
            for (int pos = 0; pos < static_cast<int>(faces[fi].size()); ++pos)
                if (h < 0 || faces[fi][pos] < h) {
                    h = faces[fi][pos];
                    hface = fi;
                    hpos = pos;
                }
        if (h < 0) {
            if (n1 == p1 && n2 == p2) leaf();
            return;
        }
        const std::vector<int> face = faces[hface];  // copy: we rewrite in place
        const int fsz = static_cast<int>(face.size());

        // Close an edge from h to another free stub of the same face. The face
        // splits in two along the new edge; other faces are untouched.
        for (int pos2 = 0; pos2 < fsz; ++pos2) {
            if (pos2 == hpos) continue;
            const int h2 = face[pos2];
            std::vector<int> f1, f2;
            if (hpos < pos2) {
                f1.assign(face.begin() + hpos + 1, face.begin() + pos2);
                f2.assign(face.begin() + pos2 + 1, face.end());
                f2.insert(f2.end(), face.begin(), face.begin() + hpos);
            } else {
                f1.assign(face.begin() + pos2 + 1, face.begin() + hpos);
                f2.assign(face.begin() + hpos + 1, face.end());
                f2.insert(f2.end(), face.begin(), face.begin() + pos2);
            }
            match[h] = h2;
            match[h2] = h;
            std::vector<std::vector<int>> saved = std::move(faces);
            faces.clear();
            for (int fi = 0; fi < static_cast<int>(saved.size()); ++fi)
                if (fi != hface) faces.push_back(saved[fi]);
            if (!f1.empty()) faces.push_back(std::move(f1));
            if (!f2.empty()) faces.push_back(std::move(f2));
            rec(n1, n2);
            faces = std::move(saved);
            match[h] = match[h2] = -1;
        }

        // Or attach a fresh vertex, entering at its slot 0; slots 1..3 become
        // free stubs of the same face.
        const char kinds[] = {'X', 'A', 'B'};
        for (char t : kinds) {
            if (t == 'X' ? n1 >= p1 : n2 >= p2) continue;
            const int base = legs + 4 * static_cast<int>(vtypes.size());
            vtypes.push_back(t);
            match[h] = base;
            match[base] = h;
            faces[hface][hpos] = base + 1;
            faces[hface].insert(faces[hface].begin() + hpos + 1, {base + 2, base + 3});
            rec(n1 + (t == 'X'), n2 + (t != 'X'));
            faces[hface] = face;
            match[h] = match[base] = -1;
            vtypes.pop_back();
        }
    }
};

}  // namespace

int strand_exit_slot(char vtype, int slot) {
    switch (vtype) {
        case 'X': return slot ^ 2;
        case 'A': return slot ^ 1;
        case 'B': return 3 - slot;
        default: throw Error("unknown vertex type");
    }
}

std::pair<Pattern, int> trace_strands(const CombinatorialMap& m) {
    const int all = static_cast<int>(m.match.size());
    std::vector<char> seen(all, 0);
    std::vector<std::pair<int, int>> pairs;
    auto follow = [&](int from) {
        // Walk edge, then through the vertex, until the next stop is a leg.
        int cur = m.match[from];
        while (cur >= m.legs) {
            seen[cur] = 1;
            const int v = (cur - m.legs) / 4;
            const int nxt = m.legs + 4 * v + strand_exit_slot(m.vtypes[v], (cur - m.legs) % 4);
            seen[nxt] = 1;
            cur = m.match[nxt];
        }
        return cur;
    };
    for (int leg = 0; leg < m.legs; ++leg) {
        if (seen[leg]) continue;
        seen[leg] = 1;
        const int other = follow(leg);
        seen[other] = 1;
        pairs.emplace_back(std::min(leg, other) + 1, std::max(leg, other) + 1);
    }
    int k = 0;
    for (int s = m.legs; s < all; ++s) {
        if (seen[s]) continue;
        ++k;
        int cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            const int v = (cur - m.legs) / 4;
            const int nxt = m.legs + 4 * v + strand_exit_slot(m.vtypes[v], (cur - m.legs) % 4);
            seen[nxt] = 1;
            cur = m.match[nxt];
        }
    }
    return {Pattern(std::move(pairs)), k};
}

IrreducibilityFlags two_leg_irreducibility(const CombinatorialMap& m) {
    if (m.legs != 2) throw UnsupportedLegCount("cut analysis needs exactly 2 legs");
    const int nv = static_cast<int>(m.vtypes.size());
    const EdgeList g = edge_list(m);
    const int t0 = nv + 0, t1 = nv + 1;
    IrreducibilityFlags flags;
    for (int i : g.internal) {
        auto comp = components(g, i);
        if (comp[t0] != comp[t1]) {
            flags.one_cut_reducible = true;
            break;
        }
    }
    for (size_t a = 0; a < g.internal.size() && !flags.two_cut_reducible; ++a)
        for (size_t b = a + 1; b < g.internal.size() && !flags.two_cut_reducible; ++b) {
            auto comp = components(g, g.internal[a], g.internal[b]);
            // A component with internal vertices but neither leg is a piece
            // that the two cut edges detach.
            std::vector<char> has_leg(g.nodes + 1, 0), has_vertex(g.nodes + 1, 0);
            for (int node = 0; node < g.nodes; ++node) {
                if (comp[node] < 0) continue;
                (node < nv ? has_vertex : has_leg)[comp[node]] = 1;
            }
            for (int c = 0; c <= g.nodes; ++c)
                if (has_vertex[c] && !has_leg[c]) flags.two_cut_reducible = true;
        }
    return flags;
}

CountTable oracle_enumerate(int legs, int p1, int p2, const OracleOptions& options) {
    if (legs != 2 && legs != 4 && legs != 6)
        throw UnsupportedLegCount("oracle supports 2, 4, or 6 legs");
    Search s{legs, p1, p2, &options};
    s.run();
    CountTable table(legs, p1 + p2);
    for (const auto& [key, count] : s.counts)
        table.add(key.first, p1, p2, LoopPoly::monomial(count, key.second));
    return table;
}

std::vector<TwoPiRow> two_pi_census(int max_vertices, const OracleOptions& options) {
    std::vector<TwoPiRow> rows;
    for (int p = 0; p <= max_vertices; ++p) {
        TwoPiRow row{p, 0, 0};
        OracleOptions opts = options;
        opts.on_map = [&](const CombinatorialMap& m, const Pattern& pat, int k) {
            if (options.on_map) options.on_map(m, pat, k);
            if (k != 0) return;
            ++row.total;
            if (p >= 1) {
                auto flags = two_leg_irreducibility(m);
                if (!flags.one_cut_reducible && !flags.two_cut_reducible) ++row.two_pi;
            }
        };
        oracle_enumerate(2, p, 0, opts);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tangle
