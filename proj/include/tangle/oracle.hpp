#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tangle/count_table.hpp"

namespace tangle {

// A completed diagram as a combinatorial map: one boundary vertex holding
// `legs` external half-edges (stubs 0..legs-1, boundary cyclic order) plus one
// 4-valent internal vertex per entry of vtypes ('X' crossing, 'A'/'B' the two
// tangency orientations); internal vertex j owns stubs legs+4j..legs+4j+3 in
// cyclic order. match is the edge involution on all stubs.
struct CombinatorialMap {
    int legs = 0;
    std::vector<char> vtypes;
    std::vector<int> match;
};

// Slot a strand entering a vertex at `slot` leaves by: crossings connect
// opposite slots, tangencies adjacent ones ('A' pairs {0,1},{2,3}; 'B' pairs
// {0,3},{1,2}).
int strand_exit_slot(char vtype, int slot);

// Leg pairing and number of closed strand cycles of a completed map.
std::pair<Pattern, int> trace_strands(const CombinatorialMap& map);

struct IrreducibilityFlags {
    bool one_cut_reducible = false;
    bool two_cut_reducible = false;
};

// Cut analysis for two-leg maps: one_cut_reducible iff removing some single
// internal edge (both endpoints internal vertices) separates the two leg
// terminals; two_cut_reducible iff removing some pair of internal edges
// detaches a piece that contains internal vertices but neither leg.
IrreducibilityFlags two_leg_irreducibility(const CombinatorialMap& map);

struct OracleOptions {
    // Backtracking nodes allowed before BudgetExceeded is thrown.
    uint64_t node_budget = 400000000;
    // Keep only maps whose strands and vertices form a single component (the
    // boundary disk does not count as a connector).
    bool connected = true;
    // Invoked for every retained map, after the connectivity filter.
    std::function<void(const CombinatorialMap&, const Pattern&, int k)> on_map;
};

// Exhaustive enumeration of planar diagrams with exactly p1 crossing and p2
// tangency vertices on `legs` boundary legs, by backtracking over half-edge
// matchings with first-touch vertex labels (so each unlabeled map is produced
// exactly once). Partial faces are tracked as circular lists of free stubs and
// only same-face matches are allowed, which prunes non-planar branches early.
// Counts land in the (p1,p2) cell of the returned table, bucketed by leg
// pairing and weighted n^(closed strand cycles).
CountTable oracle_enumerate(int legs, int p1, int p2, const OracleOptions& options = {});

// Two-leg census: for p = 0..max_vertices, the number of crossing-only
// diagrams with no closed loop (the n^0 column) and the subset, counted from
// p >= 1, that no single internal-edge cut separates and no internal two-edge
// cut reduces.
struct TwoPiRow {
    int p = 0;
    long long total = 0;
    long long two_pi = 0;
};
std::vector<TwoPiRow> two_pi_census(int max_vertices, const OracleOptions& options = {});

}  // namespace tangle
