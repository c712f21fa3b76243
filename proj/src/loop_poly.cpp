#include "tangle/loop_poly.hpp"

#include <sstream>

#include "tangle/errors.hpp"

namespace tangle {

LoopPoly LoopPoly::constant(const mpq_class& v) {
    LoopPoly p;
    if (v != 0) p.c_.push_back(v);
    return p;
}

LoopPoly LoopPoly::monomial(const mpq_class& c, int k) {
    LoopPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<size_t>(k) + 1, mpq_class(0));
        p.c_[k] = c;
    }
    return p;
}

const mpq_class& LoopPoly::coeff(int k) const {
    static const mpq_class zero(0);
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[k];
}

void LoopPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LoopPoly& LoopPoly::operator+=(const LoopPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

LoopPoly& LoopPoly::operator-=(const LoopPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

LoopPoly operator*(const LoopPoly& a, const LoopPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> out(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return LoopPoly(std::move(out));
}

LoopPoly LoopPoly::scaled(const mpq_class& f) const {
    if (f == 0) return {};
    std::vector<mpq_class> out(c_);
    for (auto& x : out) x *= f;
    return LoopPoly(std::move(out));
}

LoopPoly LoopPoly::times_n_plus_1() const {
    if (is_zero()) return {};
    std::vector<mpq_class> out(c_.size() + 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        out[i] += c_[i];
        out[i + 1] += c_[i];
    }
    return LoopPoly(std::move(out));
}

bool LoopPoly::divisible_by_n() const { return c_.empty() || c_[0] == 0; }

LoopPoly LoopPoly::divided_by_n() const {
    if (!divisible_by_n()) throw NotDivisibleByN("constant term " + c_[0].get_str() + " != 0");
    if (is_zero()) return {};
    std::vector<mpq_class> out(c_.begin() + 1, c_.end());
    return LoopPoly(std::move(out));
}

bool LoopPoly::all_integer() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

bool LoopPoly::all_nonneg_integer() const {
    for (const auto& x : c_)
        if (x.get_den() != 1 || x < 0) return false;
    return true;
}

mpz_class LoopPoly::max_denominator() const {
    mpz_class m(1);
    for (const auto& x : c_)
        if (x.get_den() > m) m = x.get_den();
    return m;
}

std::string LoopPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << c_[k].get_str();
        if (k == 1) os << "*n";
        if (k > 1) os << "*n^" << k;
        first = false;
    }
    return os.str();
}

}  // namespace tangle
