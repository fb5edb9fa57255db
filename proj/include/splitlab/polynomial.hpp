#pragma once

#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "splitlab/bigfloat.hpp"
#include "splitlab/rational.hpp"

namespace splitlab {

/// Dense univariate polynomial in u over Rational, canonical form
/// (no stored trailing zero coefficients). Values are immutable in spirit:
/// every operation returns a fresh polynomial.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);

    static Polynomial constant(const Rational& c);
    static Polynomial variable();                          // u
    static Polynomial monomial(unsigned k, const Rational& c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(unsigned k) const;               // 0 beyond degree
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_odd_in_u() const;    // only odd powers present
    bool is_even_in_u() const;   // only even powers present

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    Polynomial derivative() const;
    /// Antiderivative P with P' = *this and P(a) = 0.
    Polynomial integral_from(const Rational& a) const;
    /// (1 - u^2) * derivative; raises degree by at most one.
    Polynomial apply_D() const;

    /// Exact quotient; throws std::domain_error on zero divisor or any
    /// nonzero remainder (a remainder always signals an upstream defect).
    Polynomial exact_div(const Polynomial& divisor) const;

    Rational eval(const Rational& x) const;
    Real eval(const Real& x) const;

    std::string str(const std::string& var = "u") const;

  private:
    void trim();
    std::vector<Rational> coeffs_;   // coeffs_[k] multiplies u^k
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace splitlab
