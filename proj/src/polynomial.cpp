#include "splitlab/polynomial.hpp"

#include <ostream>
#include <sstream>

namespace splitlab {

namespace {
const Rational kZero{};
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::variable() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::monomial(unsigned k, const Rational& c) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::coeff(unsigned k) const {
    return k < coeffs_.size() ? coeffs_[k] : kZero;
}

bool Polynomial::is_odd_in_u() const {
    for (std::size_t k = 0; k < coeffs_.size(); k += 2)
        if (coeffs_[k] != 0) return false;
    return true;
}

bool Polynomial::is_even_in_u() const {
    for (std::size_t k = 1; k < coeffs_.size(); k += 2)
        if (coeffs_[k] != 0) return false;
    return true;
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> v(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = -coeffs_[k];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Rational> v(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(k) + rhs.coeff(k);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<Rational> v(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(k) - rhs.coeff(k);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<Rational> v(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            v[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return Polynomial();
    std::vector<Rational> v(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] = coeffs_[k] * c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::integral_from(const Rational& a) const {
    std::vector<Rational> v(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        v[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
    Polynomial p(std::move(v));
    Rational at_a = p.eval(a);
    if (at_a != 0) p = p - Polynomial::constant(at_a);
    return p;
}

Polynomial Polynomial::apply_D() const {
    static const Polynomial one_minus_u2({Rational(1), Rational(0), Rational(-1)});
    return one_minus_u2 * derivative();
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("exact_div: zero divisor");
    if (is_zero()) return Polynomial();
    if (degree() < divisor.degree())
        throw std::domain_error("exact_div: nonzero remainder (degree too small)");
    std::vector<Rational> rem = coeffs_;
    std::vector<Rational> quot(coeffs_.size() - divisor.coeffs_.size() + 1);
    const auto& d = divisor.coeffs_;
    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational c = rem[k + d.size() - 1] / d.back();
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= c * d[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("exact_div: nonzero remainder");
    return Polynomial(std::move(quot));
}

Rational Polynomial::eval(const Rational& x) const {
    Rational v = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * x + coeffs_[k];
    return v;
}

Real Polynomial::eval(const Real& x) const {
    Real v = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * x + Real(coeffs_[k]);
    return v;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k] == 0) continue;
        Rational c = coeffs_[k];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        const bool unit = (c == 1) && k > 0;
        if (!unit) os << c.str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace splitlab
