#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace tangle {

// Polynomial in the loop fugacity n with exact rational coefficients.
// coeff(k) multiplies n^k. Trailing zeros are normalized away, so the zero
// polynomial has an empty coefficient vector.
class LoopPoly {
  public:
    LoopPoly() = default;
    explicit LoopPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static LoopPoly constant(const mpq_class& v);
    static LoopPoly one() { return constant(1); }
    // c * n^k
    static LoopPoly monomial(const mpq_class& c, int k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const mpq_class& coeff(int k) const;                            // 0 outside range
    const std::vector<mpq_class>& coeffs() const { return c_; }

    LoopPoly& operator+=(const LoopPoly& o);
    LoopPoly& operator-=(const LoopPoly& o);
    friend LoopPoly operator+(LoopPoly a, const LoopPoly& b) { return a += b; }
    friend LoopPoly operator-(LoopPoly a, const LoopPoly& b) { return a -= b; }
    friend LoopPoly operator*(const LoopPoly& a, const LoopPoly& b);
    LoopPoly& operator*=(const LoopPoly& o) { return *this = *this * o; }
    friend bool operator==(const LoopPoly& a, const LoopPoly& b) { return a.c_ == b.c_; }

    LoopPoly scaled(const mpq_class& f) const;
    // Multiply by (n+1): used for the (n+1)*Gamma2 channel combination.
    LoopPoly times_n_plus_1() const;
    // Exact division by n; requires coeff(0) == 0.
    bool divisible_by_n() const;
    LoopPoly divided_by_n() const;

    bool all_integer() const;
    bool all_nonneg_integer() const;
    // Largest denominator over all coefficients (1 for integral polynomials).
    mpz_class max_denominator() const;

    // "3 + 2n + n^2" style, for logs and error messages.
    std::string str() const;

  private:
    void trim();
    std::vector<mpq_class> c_;
};

}  // namespace tangle
