#pragma once
#include <map>
#include <string>

#include "tangle/count_table.hpp"
#include "tangle/gseries.hpp"

namespace tangle {

// Couplings that cancel every two-legged subdiagram: substituted back into the
// two-leg composition they give exactly 1 through `order`.
struct CouplingSolution {
    GSeries t;   // edge weight, constant term 1
    GSeries g1;  // crossing coupling, zero constant term
    GSeries g2;  // tangency counterterm, zero constant term
    int order = 0;
};

// Horizontal/vertical channel content of the four-leg functions: h1, h2 count
// the two orientations of horizontally two-particle-irreducible tangles, v2
// the rotated copy of type 2.
struct ChannelSeries {
    GSeries h1;
    GSeries h2;
    GSeries v2;
};

// Invert the channel relations
//   h2 + h1 = 1 - 1/((1-g)(1 + gamma2 + gamma1))
//   h2 - h1 = 1 - 1/((1+g)(1 + gamma2 - gamma1))
//   h2 + n*v2 + h1 = 1 - 1/((1-g)(1 + (n+1)*gamma2 + gamma1))
// for h1, h2, v2 through `order`. gamma1/gamma2 need zero constant terms and
// truncation >= order. The v2 extraction divides by n exactly and propagates
// NotDivisibleByN when the inputs are inconsistent.
ChannelSeries channel_decompose(const GSeries& gamma1, const GSeries& gamma2, int order);

// Order-by-order triangular solve for (t, g1, g2): coefficient m of g1 and g2
// comes from the channel content at order m-1 (g1 = g*(1-2*h2), g2 =
// -g*(h1+v2)), then coefficient m of t is fixed so the two-leg composition
// stays 1 through order m. table2 holds the raw two-leg counts, table4 the raw
// four-leg counts with the crossing pattern 13-24 and adjacent pattern 12-34.
// Throws InsufficientTableOrder if either table covers less than `order`,
// CalibrationError if the four-leg data does not open as Gamma1 = g + O(g^2)
// or the solved g2 does not start at g^3, and ResidualNonZero if the solved
// couplings fail to reproduce their defining equations (cannot happen unless
// the implementation itself is broken).
CouplingSolution solve_couplings(const CountTable& table2, const CountTable& table4, int order);

// Pattern -> series-name table ("Gamma1"/"Gamma2" for 4 legs, "Xi1".."Xi5"
// for 6). Patterns related by a rotation or reflection of the boundary carry
// equal counts, so each name's series is computed from any member; membership
// beyond one pattern is a cross-check, not a sum.
using ClassMap = std::map<std::string, std::string>;
const ClassMap& default_class_map();
ClassMap class_map_from_json(const std::string& text);

// Compose every mapped pattern of `table` with the solved couplings and
// return one series per class name. Throws UnmappedPattern if the table holds
// counts for a pattern the map does not know, CalibrationError if two
// patterns of the same class disagree.
std::map<std::string, GSeries> tangle_series(const CountTable& table, const CouplingSolution& sol,
                                             const ClassMap& class_map);

// Stitch the renormalizer input from a crossings-only run reaching order
// `crossings.max_order()` and a mixed-vertex run reaching `mixed.max_order()`:
// pure-crossing cells come from the first, every cell with a tangency from the
// second. Because the tangency coupling starts at g^3, a mixed cell (p1,p2>=1)
// first contributes to composed series at g-order p1+3*p2 > p1+p2+2, so the
// merge is complete through min(crossings order, mixed order + 2) and the
// result's max_order is set to that.
CountTable merge_vertex_orders(const CountTable& crossings, const CountTable& mixed);

}  // namespace tangle
