#pragma once
#include <cstdint>
#include <functional>
#include <string>

#include "tangle/count_table.hpp"

namespace tangle {

// Snapshot passed to the per-level hook after level `level` has been fully
// processed (all closes cascaded, empty-state weights harvested, next vertex
// layer built).
struct LevelCheckpoint {
    int level = 0;
    uint64_t states = 0;    // distinct states after the close cascade
    double seconds = 0.0;   // wall time spent on this level
    const CountTable* table = nullptr;  // counts harvested through this level
    // Serializes the frontier (the weighted state set entering level+1);
    // empty string when the run is finished. Deterministic bytes.
    std::function<std::string()> frontier;
};

struct EnumerateOptions {
    bool allow_tangencies = false;
    bool allow_disconnected = false;
    int threads = 1;
    // The last two levels never feed a full next-level union, so once a
    // frontier exceeds this many states they are slice-streamed: bounded
    // slices are cascaded, harvested and freed one at a time (0 disables
    // slicing). Counts are unaffected — weights add up exactly across slices;
    // peak memory drops on large runs at the price of re-deriving states
    // shared between slices, and the per-level `states` statistic becomes a
    // visit count on those levels (their checkpoint frontier is empty).
    uint64_t final_shard_states = 500000;
    std::function<void(const LevelCheckpoint&)> on_level;
    // Resume support: start from this serialized frontier instead of the
    // initial state. resume_table must hold the counts harvested so far.
    int resume_level = 0;  // level the frontier enters (0 = fresh run)
    std::string resume_frontier;
    const CountTable* resume_table = nullptr;
};

// Level-by-level transfer-matrix enumeration: counts connected planar
// diagrams with `legs` external legs and up to max_vertices crossing/tangency
// vertices, weighted n^(closed loops), bucketed by leg pairing and (p1, p2).
// With allow_disconnected the graph-connectivity refinement is dropped and
// the counts include diagrams whose every component touches at least one leg
// (identical output for legs=2). Runs out of memory surface as a clean stop:
// the returned table's max_order is the last fully completed level.
CountTable enumerate(int legs, int max_vertices, const EnumerateOptions& opt);
CountTable enumerate(int legs, int max_vertices, bool allow_tangencies = false,
                     bool allow_disconnected = false);

}  // namespace tangle
