#pragma once
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tangle/gseries.hpp"
#include "tangle/loop_poly.hpp"

namespace tangle {

// A perfect matching of leg labels {1..L}, stored as sorted (lo,hi) pairs.
// Text form pairs the digits: "12", "13-24", "14-25-36".
class Pattern {
  public:
    Pattern() = default;
    explicit Pattern(std::vector<std::pair<int, int>> pairs);

    static Pattern parse(const std::string& text);
    static std::vector<Pattern> all(int legs);

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int legs() const { return static_cast<int>(pairs_.size()) * 2; }
    std::string str() const;
    // Apply a relabeling of legs (perm[i] = new label of leg i, 1-based).
    Pattern relabeled(const std::vector<int>& perm) const;

    auto operator<=>(const Pattern&) const = default;

  private:
    std::vector<std::pair<int, int>> pairs_;
};

// Raw diagram counts: (pattern, p1 crossings, p2 tangencies) -> LoopPoly in n.
class CountTable {
  public:
    CountTable() = default;
    CountTable(int legs, int max_order) : legs_(legs), max_order_(max_order) {}

    int legs() const { return legs_; }
    int max_order() const { return max_order_; }
    void set_max_order(int m) { max_order_ = m; }

    using Key = std::tuple<Pattern, int, int>;
    const std::map<Key, LoopPoly>& entries() const { return entries_; }
    const LoopPoly& at(const Pattern& pat, int p1, int p2) const;  // zero if absent
    void add(const Pattern& pat, int p1, int p2, const LoopPoly& v);

    bool operator==(const CountTable& o) const = default;

    // CSV with header "legs,pattern,p1,p2,k,count", one row per n^k monomial.
    void write_csv(std::ostream& os) const;
    static CountTable read_csv(std::istream& is);

    // Restriction of the table to a single pattern: {(p1,p2) -> poly}.
    std::map<std::pair<int, int>, LoopPoly> slice(const Pattern& pat) const;

    // Copy with entries of total order > order removed and max_order capped.
    CountTable truncated(int order) const;

  private:
    int legs_ = 0;
    int max_order_ = -1;
    std::map<Key, LoopPoly> entries_;
};

// Evaluate the correlator generated by one pattern's raw counts at couplings
// (t, g1, g2): t^(-L/2) * sum entries(pattern,p1,p2) * (g1/t^2)^p1 * (g2/t^2)^p2,
// as a series in g through `order`. A diagram with V = p1+p2 vertices and L
// legs has 2V + L/2 edges, each carrying 1/t.
GSeries compose_counts(const CountTable& table, const Pattern& pattern, const GSeries& t,
                       const GSeries& g1, const GSeries& g2, int order);

}  // namespace tangle
