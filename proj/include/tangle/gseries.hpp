#pragma once
#include <string>
#include <vector>

#include "tangle/loop_poly.hpp"

namespace tangle {

// Truncated formal power series in g with LoopPoly coefficients.
// coeffs has exactly truncation_order()+1 entries; binary operations first
// truncate to the smaller order.
class GSeries {
  public:
    GSeries() : c_(1) {}
    explicit GSeries(int truncation_order) : c_(static_cast<size_t>(truncation_order) + 1) {}
    explicit GSeries(std::vector<LoopPoly> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
    }

    static GSeries one(int order);
    static GSeries g(int order);  // the series "g" itself

    int truncation_order() const { return static_cast<int>(c_.size()) - 1; }
    const LoopPoly& coeff(int p) const;  // zero outside range
    void set_coeff(int p, LoopPoly v);
    const std::vector<LoopPoly>& coeffs() const { return c_; }

    GSeries truncated(int order) const;

    friend GSeries operator+(const GSeries& a, const GSeries& b);
    friend GSeries operator-(const GSeries& a, const GSeries& b);
    friend GSeries operator*(const GSeries& a, const GSeries& b);
    friend bool operator==(const GSeries& a, const GSeries& b) { return a.c_ == b.c_; }

    GSeries scaled(const LoopPoly& f) const;
    // 1/this; requires coeff(0) == 1 (NonUnitConstantTerm otherwise).
    GSeries reciprocal() const;
    // Divide every coefficient by n exactly (NotDivisibleByN with the first
    // offending order otherwise).
    GSeries divided_by_n() const;

    bool is_zero() const;
    bool all_integer() const;
    bool all_nonneg_integer() const;
    mpz_class max_denominator() const;

    // {"variable":"g","truncation":P,"coeffs":[[[k,"num","den"],...],...]}
    std::string to_json() const;
    static GSeries from_json(const std::string& text);

    std::string str() const;  // human-readable, for logs

  private:
    std::vector<LoopPoly> c_;
};

}  // namespace tangle
