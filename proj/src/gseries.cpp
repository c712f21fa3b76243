#include "tangle/gseries.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "tangle/errors.hpp"

namespace tangle {

GSeries GSeries::one(int order) {
    GSeries s(order);
    s.c_[0] = LoopPoly::one();
    return s;
}

GSeries GSeries::g(int order) {
    GSeries s(order);
    if (order >= 1) s.c_[1] = LoopPoly::one();
    return s;
}

const LoopPoly& GSeries::coeff(int p) const {
    static const LoopPoly zero;
    if (p < 0 || p >= static_cast<int>(c_.size())) return zero;
    return c_[p];
}

void GSeries::set_coeff(int p, LoopPoly v) { c_.at(static_cast<size_t>(p)) = std::move(v); }

GSeries GSeries::truncated(int order) const {
    GSeries s(order);
    for (int p = 0; p <= order && p <= truncation_order(); ++p) s.c_[p] = c_[p];
    return s;
}

GSeries operator+(const GSeries& a, const GSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    GSeries out(n);
    for (int i = 0; i <= n; ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
}

GSeries operator-(const GSeries& a, const GSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    GSeries out(n);
    for (int i = 0; i <= n; ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
}

GSeries operator*(const GSeries& a, const GSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    GSeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.c_[j].is_zero()) continue;
            out.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return out;
}

GSeries GSeries::scaled(const LoopPoly& f) const {
    GSeries out(truncation_order());
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) out.c_[i] = c_[i] * f;
    return out;
}

GSeries GSeries::reciprocal() const {
    if (!(c_[0] == LoopPoly::one()))
        throw NonUnitConstantTerm("series reciprocal needs constant term 1, got " + c_[0].str());
    int n = truncation_order();
    GSeries r(n);
    r.c_[0] = LoopPoly::one();
    for (int m = 1; m <= n; ++m) {
        LoopPoly acc;
        for (int i = 1; i <= m; ++i) {
            if (c_[i].is_zero() || r.c_[m - i].is_zero()) continue;
            acc += c_[i] * r.c_[m - i];
        }
        r.c_[m] = LoopPoly() - acc;
    }
    return r;
}

GSeries GSeries::divided_by_n() const {
    GSeries out(truncation_order());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].divisible_by_n())
            throw NotDivisibleByN("at order " + std::to_string(i) +
                                  ": coefficient " + c_[i].str());
        out.c_[i] = c_[i].divided_by_n();
    }
    return out;
}

bool GSeries::is_zero() const {
    for (const auto& p : c_)
        if (!p.is_zero()) return false;
    return true;
}

bool GSeries::all_integer() const {
    for (const auto& p : c_)
        if (!p.all_integer()) return false;
    return true;
}

bool GSeries::all_nonneg_integer() const {
    for (const auto& p : c_)
        if (!p.all_nonneg_integer()) return false;
    return true;
}

mpz_class GSeries::max_denominator() const {
    mpz_class m(1);
    for (const auto& p : c_) {
        mpz_class d = p.max_denominator();
        if (d > m) m = d;
    }
    return m;
}

std::string GSeries::to_json() const {
    nlohmann::json j;
    j["variable"] = "g";
    j["truncation"] = truncation_order();
    auto coeffs = nlohmann::json::array();
    for (const auto& poly : c_) {
        auto terms = nlohmann::json::array();
        for (int k = 0; k <= poly.degree(); ++k) {
            const mpq_class& q = poly.coeff(k);
            if (q == 0) continue;
            terms.push_back({k, q.get_num().get_str(), q.get_den().get_str()});
        }
        coeffs.push_back(terms);
    }
    j["coeffs"] = coeffs;
    return j.dump();
}

GSeries GSeries::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series JSON: ") + e.what());
    }
    if (!j.contains("truncation") || !j.contains("coeffs"))
        throw ParseError("series JSON missing truncation/coeffs");
    int order = j["truncation"].get<int>();
    GSeries s(order);
    const auto& coeffs = j["coeffs"];
    if (static_cast<int>(coeffs.size()) != order + 1)
        throw ParseError("series JSON length mismatch");
    for (int p = 0; p <= order; ++p) {
        LoopPoly poly;
        for (const auto& term : coeffs[p]) {
            int k = term.at(0).get<int>();
            mpz_class num(term.at(1).get<std::string>());
            mpz_class den(term.at(2).get<std::string>());
            if (den == 0) throw ParseError("zero denominator in series JSON");
            mpq_class q(num, den);
            q.canonicalize();
            poly += LoopPoly::monomial(q, k);
        }
        s.c_[p] = std::move(poly);
    }
    return s;
}

std::string GSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t p = 0; p < c_.size(); ++p) {
        if (c_[p].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[p].str() << ")*g^" << p;
        first = false;
    }
    if (first) os << "0";
    os << " + O(g^" << c_.size() << ")";
    return os.str();
}

}  // namespace tangle
