#include "tangle/renorm.hpp"

#include <nlohmann/json.hpp>

#include "tangle/errors.hpp"

namespace tangle {
namespace {

const Pattern& pat_cross() {
    static const Pattern p = Pattern::parse("13-24");
    return p;
}
const Pattern& pat_adjacent() {
    static const Pattern p = Pattern::parse("12-34");
    return p;
}
const Pattern& pat_two_leg() {
    static const Pattern p = Pattern::parse("12");
    return p;
}

}  // namespace

ChannelSeries channel_decompose(const GSeries& gamma1, const GSeries& gamma2, int order) {
    if (gamma1.truncation_order() < order || gamma2.truncation_order() < order)
        throw OutOfRange("channel inputs truncated below the requested order");
    const GSeries G1 = gamma1.truncated(order);
    const GSeries G2 = gamma2.truncated(order);
    const GSeries one = GSeries::one(order);
    const GSeries g = GSeries::g(order);
    const LoopPoly half = LoopPoly::constant(mpq_class(1, 2));
    const LoopPoly n_plus_1 = LoopPoly(std::vector<mpq_class>{1, 1});

    const GSeries sum = one - ((one - g) * (one + G2 + G1)).reciprocal();
    const GSeries diff = one - ((one + g) * (one + G2 - G1)).reciprocal();
    const GSeries boosted = one - ((one - g) * (one + G2.scaled(n_plus_1) + G1)).reciprocal();

    ChannelSeries out;
    out.h2 = (sum + diff).scaled(half);
    out.h1 = (sum - diff).scaled(half);
    out.v2 = (boosted - sum).divided_by_n();
    return out;
}

CouplingSolution solve_couplings(const CountTable& table2, const CountTable& table4, int order) {
    if (table2.max_order() < order)
        throw InsufficientTableOrder("two-leg table stops at order " +
                                     std::to_string(table2.max_order()));
    if (table4.max_order() < order)
        throw InsufficientTableOrder("four-leg table stops at order " +
                                     std::to_string(table4.max_order()));

    CouplingSolution sol;
    sol.order = order;
    sol.t = GSeries::one(order);
    sol.g1 = GSeries(order);
    sol.g2 = GSeries(order);

    for (int m = 1; m <= order; ++m) {
        const GSeries gamma1 = compose_counts(table4, pat_cross(), sol.t, sol.g1, sol.g2, m - 1);
        const GSeries gamma2 = compose_counts(table4, pat_adjacent(), sol.t, sol.g1, sol.g2, m - 1);
        const ChannelSeries ch = channel_decompose(gamma1, gamma2, m - 1);

        LoopPoly c1 = ch.h2.coeff(m - 1).scaled(-2);
        if (m == 1) c1 += LoopPoly::one();
        sol.g1.set_coeff(m, c1);
        sol.g2.set_coeff(m, LoopPoly() - (ch.h1.coeff(m - 1) + ch.v2.coeff(m - 1)));

        // With t_m still zero the two-leg residual at order m is A_m - t_m.
        const GSeries G = compose_counts(table2, pat_two_leg(), sol.t, sol.g1, sol.g2, m);
        sol.t.set_coeff(m, G.coeff(m));
    }

    const GSeries gamma1 = compose_counts(table4, pat_cross(), sol.t, sol.g1, sol.g2, order);
    if (!gamma1.coeff(0).is_zero() || (order >= 1 && !(gamma1.coeff(1) == LoopPoly::one())))
        throw CalibrationError("four-leg counts do not open as Gamma1 = g + O(g^2)");
    for (int m = 1; m <= std::min(order, 2); ++m)
        if (!sol.g2.coeff(m).is_zero())
            throw CalibrationError("solved tangency coupling does not start at g^3");

    // The defining equations must hold identically; anything else means the
    // solve above is internally inconsistent.
    const GSeries G = compose_counts(table2, pat_two_leg(), sol.t, sol.g1, sol.g2, order);
    if (!(G == GSeries::one(order)))
        throw ResidualNonZero("two-leg composition is not 1 after the solve");
    if (order >= 1) {
        const GSeries gamma2 =
            compose_counts(table4, pat_adjacent(), sol.t, sol.g1, sol.g2, order - 1);
        const ChannelSeries ch = channel_decompose(gamma1.truncated(order - 1), gamma2, order - 1);
        // The order-m coefficient of g*X only reads X at order m-1, so zero
        // padding the channels to `order` keeps the comparison exact.
        const GSeries g = GSeries::g(order);
        const GSeries h1 = ch.h1.truncated(order), h2 = ch.h2.truncated(order);
        const GSeries v2 = ch.v2.truncated(order);
        const GSeries lift1 = g * (GSeries::one(order) - h2.scaled(LoopPoly::constant(2)));
        const GSeries lift2 = (g * (h1 + v2)).scaled(LoopPoly::constant(-1));
        if (!(lift1 == sol.g1) || !(lift2 == sol.g2))
            throw ResidualNonZero("coupling equations fail on the solved series");
    }
    return sol;
}

const ClassMap& default_class_map() {
    static const ClassMap map = {
        {"13-24", "Gamma1"},    {"12-34", "Gamma2"},    {"14-23", "Gamma2"},
        {"14-25-36", "Xi1"},    {"13-25-46", "Xi2"},    {"14-26-35", "Xi2"},
        {"15-24-36", "Xi2"},    {"12-35-46", "Xi3"},    {"13-24-56", "Xi3"},
        {"13-26-45", "Xi3"},    {"15-23-46", "Xi3"},    {"15-26-34", "Xi3"},
        {"16-24-35", "Xi3"},    {"12-36-45", "Xi4"},    {"14-23-56", "Xi4"},
        {"16-25-34", "Xi4"},    {"12-34-56", "Xi5"},    {"16-23-45", "Xi5"},
    };
    return map;
}

ClassMap class_map_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("class map: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("class map: expected a JSON object");
    ClassMap map;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string()) throw ParseError("class map: values must be strings");
        Pattern::parse(key);  // validates the pattern text
        map[key] = value.get<std::string>();
    }
    return map;
}

std::map<std::string, GSeries> tangle_series(const CountTable& table, const CouplingSolution& sol,
                                             const ClassMap& class_map) {
    for (const auto& [key, poly] : table.entries()) {
        const std::string pat = std::get<0>(key).str();
        if (!poly.is_zero() && !class_map.count(pat))
            throw UnmappedPattern("no class for pattern " + pat);
    }
    std::map<std::string, GSeries> out;
    std::map<std::string, std::string> witness;  // class -> first pattern seen
    for (const auto& [pat_text, cls] : class_map) {
        const Pattern pat = Pattern::parse(pat_text);
        if (pat.legs() != table.legs()) continue;
        GSeries series = compose_counts(table, pat, sol.t, sol.g1, sol.g2, sol.order);
        auto [it, fresh] = out.emplace(cls, series);
        if (fresh) {
            witness[cls] = pat_text;
        } else if (!(it->second == series)) {
            throw CalibrationError("patterns " + witness[cls] + " and " + pat_text +
                                   " are mapped to " + cls + " but compose differently");
        }
    }
    return out;
}

CountTable merge_vertex_orders(const CountTable& crossings, const CountTable& mixed) {
    if (crossings.legs() != mixed.legs())
        throw Error("cannot merge tables with different leg counts");
    const int order = std::min(crossings.max_order(), mixed.max_order() + 2);
    // Cells beyond the merged order are dropped, not just ignored: the CSV
    // round trip infers the order from the highest populated cell, so keeping
    // them would let a reloaded table claim coverage it does not have.
    CountTable out(crossings.legs(), order);
    for (const auto& [key, poly] : crossings.entries()) {
        const auto& [pat, p1, p2] = key;
        if (p2 == 0 && p1 <= order) out.add(pat, p1, p2, poly);
    }
    for (const auto& [key, poly] : mixed.entries()) {
        const auto& [pat, p1, p2] = key;
        if (p2 > 0 && p1 + p2 <= order) out.add(pat, p1, p2, poly);
    }
    return out;
}

}  // namespace tangle
