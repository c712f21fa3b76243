#include "tangle/count_table.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "tangle/errors.hpp"

namespace tangle {

Pattern::Pattern(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    for (auto& [a, b] : pairs_)
        if (a > b) std::swap(a, b);
    std::sort(pairs_.begin(), pairs_.end());
    std::vector<bool> seen(pairs_.size() * 2 + 1, false);
    for (auto [a, b] : pairs_) {
        if (a < 1 || b > static_cast<int>(pairs_.size()) * 2 || a == b || seen[a] || seen[b])
            throw ParseError("not a perfect matching of legs");
        seen[a] = seen[b] = true;
    }
}

Pattern Pattern::parse(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    size_t i = 0;
    while (i < text.size()) {
        if (i + 1 >= text.size() || !isdigit(text[i]) || !isdigit(text[i + 1]))
            throw ParseError("bad pattern '" + text + "'");
        pairs.emplace_back(text[i] - '0', text[i + 1] - '0');
        i += 2;
        if (i < text.size()) {
            if (text[i] != '-' || i + 1 == text.size())
                throw ParseError("bad pattern '" + text + "'");
            ++i;
        }
    }
    if (pairs.empty()) throw ParseError("empty pattern");
    return Pattern(pairs);
}

std::vector<Pattern> Pattern::all(int legs) {
    std::vector<Pattern> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<bool> used(legs + 1, false);
    auto rec = [&](auto&& self) -> void {
        int a = 0;
        for (int i = 1; i <= legs; ++i)
            if (!used[i]) {
                a = i;
                break;
            }
        if (a == 0) {
            out.push_back(Pattern(cur));
            return;
        }
        used[a] = true;
        for (int b = a + 1; b <= legs; ++b) {
            if (used[b]) continue;
            used[b] = true;
            cur.emplace_back(a, b);
            self(self);
            cur.pop_back();
            used[b] = false;
        }
        used[a] = false;
    };
    rec(rec);
    return out;
}

std::string Pattern::str() const {
    std::string s;
    for (auto [a, b] : pairs_) {
        if (!s.empty()) s += '-';
        s += static_cast<char>('0' + a);
        s += static_cast<char>('0' + b);
    }
    return s;
}

Pattern Pattern::relabeled(const std::vector<int>& perm) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(pairs_.size());
    for (auto [a, b] : pairs_) out.emplace_back(perm.at(a), perm.at(b));
    return Pattern(out);
}

const LoopPoly& CountTable::at(const Pattern& pat, int p1, int p2) const {
    static const LoopPoly zero;
    auto it = entries_.find({pat, p1, p2});
    return it == entries_.end() ? zero : it->second;
}

void CountTable::add(const Pattern& pat, int p1, int p2, const LoopPoly& v) {
    if (v.is_zero()) return;
    auto& slot = entries_[{pat, p1, p2}];
    slot += v;
    if (slot.is_zero()) entries_.erase({pat, p1, p2});
}

void CountTable::write_csv(std::ostream& os) const {
    os << "legs,pattern,p1,p2,k,count\n";
    for (const auto& [key, poly] : entries_) {
        const auto& [pat, p1, p2] = key;
        for (int k = 0; k <= poly.degree(); ++k) {
            const mpq_class& q = poly.coeff(k);
            if (q == 0) continue;
            os << legs_ << ',' << pat.str() << ',' << p1 << ',' << p2 << ',' << k << ','
               << q.get_str() << '\n';
        }
    }
}

CountTable CountTable::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("legs,pattern,p1,p2,k,count", 0) != 0)
        throw ParseError("bad count-table CSV header");
    CountTable t;
    int max_seen = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> f;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 6) throw ParseError("bad count-table CSV row: " + line);
        int legs = std::stoi(f[0]);
        if (t.legs_ == 0)
            t.legs_ = legs;
        else if (t.legs_ != legs)
            throw ParseError("mixed leg counts in CSV");
        Pattern pat = Pattern::parse(f[1]);
        int p1 = std::stoi(f[2]), p2 = std::stoi(f[3]), k = std::stoi(f[4]);
        mpq_class count{mpz_class(f[5])};
        t.add(pat, p1, p2, LoopPoly::monomial(count, k));
        max_seen = std::max(max_seen, p1 + p2);
    }
    t.max_order_ = max_seen;
    return t;
}

std::map<std::pair<int, int>, LoopPoly> CountTable::slice(const Pattern& pat) const {
    std::map<std::pair<int, int>, LoopPoly> out;
    for (const auto& [key, poly] : entries_) {
        const auto& [p, p1, p2] = key;
        if (p == pat) out[{p1, p2}] = poly;
    }
    return out;
}

CountTable truncated_impl(const CountTable& t, int order) {
    CountTable out(t.legs(), order);
    for (const auto& [key, poly] : t.entries()) {
        const auto& [pat, p1, p2] = key;
        if (p1 + p2 <= order) out.add(pat, p1, p2, poly);
    }
    return out;
}

CountTable CountTable::truncated(int order) const { return truncated_impl(*this, order); }

GSeries compose_counts(const CountTable& table, const Pattern& pattern, const GSeries& t,
                       const GSeries& g1, const GSeries& g2, int order) {
    if (table.max_order() < order)
        throw InsufficientTableOrder("table order " + std::to_string(table.max_order()) +
                                     " < requested " + std::to_string(order));
    if (!(t.coeff(0) == LoopPoly::one()))
        throw NonUnitConstantTerm("t must have constant term 1");
    if (!g1.coeff(0).is_zero() || !g2.coeff(0).is_zero())
        throw Error("couplings g1, g2 must have zero constant term");

    GSeries tinv = t.truncated(order).reciprocal();
    GSeries tinv2 = tinv * tinv;
    GSeries u1 = g1.truncated(order) * tinv2;
    GSeries u2 = g2.truncated(order) * tinv2;

    int L = table.legs();
    GSeries prefactor = GSeries::one(order);
    for (int i = 0; i < L / 2; ++i) prefactor = prefactor * tinv;

    std::vector<GSeries> pow1{GSeries::one(order)}, pow2{GSeries::one(order)};
    auto power = [order](std::vector<GSeries>& cache, const GSeries& base, int e) -> const GSeries& {
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };

    GSeries out(order);
    for (const auto& [key, poly] : table.entries()) {
        const auto& [pat, p1, p2] = key;
        if (!(pat == pattern) || p1 + p2 > order) continue;
        out = out + (power(pow1, u1, p1) * power(pow2, u2, p2)).scaled(poly);
    }
    return prefactor * out;
}

}  // namespace tangle
