#pragma once

#include <vector>

#include "splitlab/polynomial.hpp"

namespace splitlab {

/// tau_0 = 1, tau_1 = u, tau_{n+1} = (1/n) D tau_n with D = (1-u^2) d/du.
/// Cached and immutable once published; safe for concurrent callers.
const Polynomial& tau(unsigned n);

/// Coefficients a_k with p = sum a_k tau_k; exact triangular change of basis.
struct TauExpansion {
    std::vector<Rational> coeffs;

    const Rational& coeff(unsigned k) const;
};

TauExpansion to_tau(const Polynomial& p);
Polynomial from_tau(const TauExpansion& e);

/// Weighted norm sum_i |a_i| (pi/2)^(n-i) evaluated at `bits` binary
/// precision. Requires deg p <= n.
Real norm(const Polynomial& p, unsigned n, unsigned bits);

namespace detail {
/// Flips one cached tau coefficient. Negative-control hook for the
/// `validate` command; never called by library code.
void corrupt_tau_cache_for_selftest();
}  // namespace detail

}  // namespace splitlab
