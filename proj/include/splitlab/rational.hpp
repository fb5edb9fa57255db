#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace splitlab {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Safe rational construction; handles negative denominators and reduces.
inline Rational frac(long num, long den) {
    if (den == 0) throw std::domain_error("frac: zero denominator");
    return Rational(num) / Rational(den);
}

inline Rational frac(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("frac: zero denominator");
    return Rational(num) / Rational(den);
}

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

}  // namespace splitlab
