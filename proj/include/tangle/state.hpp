#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tangle {

// Transfer-matrix basis state: the ordered dangling line-ends of a partially
// drawn diagram, read top to bottom.
//
//   points[i] >= 0 : index of the strand partner of point i
//   points[i] <  0 : point i carries leg token -(points[i]) in 1..L
//   blocks         : lengths of the planarity blocks, topmost first; sums to
//                    points.size(), every block nonempty
//   groups         : graph-connectivity class per point, renumbered by first
//                    occurrence; empty when connectivity is not tracked
struct EvoState {
    std::vector<int8_t> points;
    std::vector<uint8_t> blocks;
    std::vector<uint8_t> groups;

    bool empty() const { return points.empty(); }
    int size() const { return static_cast<int>(points.size()); }
    bool operator==(const EvoState&) const = default;
};

// `legs` points carrying leg tokens 1..legs, one block, each point its own
// group (no groups when track_groups is off). Throws UnsupportedLegCount
// unless legs is one of {2, 4, 6}.
EvoState initial_state(int legs, bool track_groups = true);

// Injective byte encoding of the state modulo representation: partner indices
// are positional (already canonical) and group labels are renumbered by first
// occurrence before encoding.
std::string canonical_key(const EvoState& s);
EvoState decode_state(std::string_view key);

// Vertex moves. All act on the uppermost point (global position 1); each adds
// one vertex and two dangling points to the top block, weight 1.
EvoState crossing_successor(const EvoState& s);        // new pair straddles the top point
EvoState tangency_above_successor(const EvoState& s);  // new pair above the top point
EvoState tangency_below_successor(const EvoState& s);  // new pair below the top point

// One admissible Close move: join point 0 with an odd 0-based position q-1
// inside the top block.
struct CloseResult {
    EvoState state;
    bool loop_closed = false;  // endpoints were mutual partners: weight n
    int leg_a = 0, leg_b = 0;  // recorded leg pairing when both carried tokens
    int q = 0;                 // 1-based closed position, for diagnostics
};

// All admissible Close moves. With connected_only, a close that would finish
// a graph component while other points remain is excluded.
std::vector<CloseResult> close_successors(const EvoState& s, bool connected_only);

// Spec-shaped combined successor list (vertex moves + closes), mainly for
// tests and cross-checks; the enumerator drives the phase-split functions.
struct Successor {
    enum Kind { Crossing, TangencyAbove, TangencyBelow, Close } kind;
    EvoState state;
    bool weight_is_n = false;
    int leg_a = 0, leg_b = 0;
    int q = 0;
};
std::vector<Successor> successors(const EvoState& s, bool allow_tangencies,
                                  bool connected_only = true);

}  // namespace tangle
