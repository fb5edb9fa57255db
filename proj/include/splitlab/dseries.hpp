#pragma once

#include <vector>

#include "splitlab/polynomial.hpp"

namespace splitlab {

/// Truncated power series in d with Polynomial coefficients
/// (coeffs of d^0 .. d^order). Binary operations truncate at min(order).
class DSeries {
  public:
    DSeries() = default;
    explicit DSeries(unsigned order) : coeffs_(order + 1) {}
    DSeries(unsigned order, std::vector<Polynomial> coeffs);

    unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    const Polynomial& operator[](unsigned n) const { return coeffs_[n]; }
    void set(unsigned n, Polynomial p) { coeffs_[n] = std::move(p); }

    bool is_zero() const;
    /// Smallest n with a nonzero coefficient, or -1 for the zero series.
    int lowest_order() const;

    bool even_in_d() const;
    bool odd_in_d() const;
    bool coeffs_odd_in_u() const;
    bool coeffs_even_in_u() const;
    /// deg(coeffs[n]) <= n for all n (membership in the operator class).
    bool degree_within_index() const;

    DSeries truncated(unsigned new_order) const;
    /// Multiply by d^k (drops the top k coefficients, order unchanged).
    DSeries shift_up(unsigned k) const;
    /// Divide by d^k; requires the low k coefficients to vanish.
    DSeries shift_down(unsigned k) const;

    bool operator==(const DSeries& rhs) const { return coeffs_ == rhs.coeffs_; }
    bool operator!=(const DSeries& rhs) const { return !(*this == rhs); }

  private:
    std::vector<Polynomial> coeffs_;
};

DSeries add(const DSeries& a, const DSeries& b);
DSeries sub(const DSeries& a, const DSeries& b);
DSeries mul(const DSeries& a, const DSeries& b);          // OpenMP over output index
DSeries mul_serial(const DSeries& a, const DSeries& b);   // reference implementation
DSeries mul_poly(const DSeries& a, const Polynomial& p);
DSeries mul_scalar(const DSeries& a, const Rational& c);
/// Division by a unit series: b's d^0 coefficient must be a nonzero constant.
DSeries div_unit(const DSeries& a, const DSeries& b);

/// Taylor coefficients of an analytic kernel f(z); all kernels used here are
/// rational. Applied to series via f(dD), coefficient n of the result being
/// sum_{i<=n} f_i D^i Q_{n-i}.
struct OperatorKernel {
    std::vector<Rational> taylor;

    static OperatorKernel exp_dD(unsigned order, int sign = +1);
    static OperatorKernel cosh_half(unsigned order);   // cosh(z/2)
    static OperatorKernel sinh_half(unsigned order);   // sinh(z/2)
    static OperatorKernel cosh_full(unsigned order);   // cosh(z)
    static OperatorKernel sinh_full(unsigned order);   // sinh(z)
    static OperatorKernel sinc_half(unsigned order);   // sinh(z/2)/z
    static OperatorKernel inversion_remainder(unsigned order);  // (z - 2 sinh(z/2))/z^2
};

DSeries apply_f_of_dD(const OperatorKernel& k, const DSeries& q);          // OpenMP
DSeries apply_f_of_dD_serial(const OperatorKernel& k, const DSeries& q);   // reference

DSeries op_C(const DSeries& q);    // cosh((d/2) D)
DSeries op_S(const DSeries& q);    // sinh((d/2) D)
DSeries op_C1(const DSeries& q);   // cosh(d D)
DSeries op_S1(const DSeries& q);   // sinh(d D)

}  // namespace splitlab
