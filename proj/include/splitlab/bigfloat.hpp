#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "splitlab/rational.hpp"

namespace splitlab {

/// Arbitrary-precision real; working precision is set per call site via
/// PrecisionGuard, so callers state the binary precision they need.
using Real = boost::multiprecision::mpfr_float;

inline unsigned digits10_for_bits(unsigned bits) {
    // ceil(bits * log10(2)) plus guard digits so the backend allocates >= bits
    return static_cast<unsigned>(bits * 0.3010299956639812) + 3;
}

/// Scoped override of the (thread-local) default mpfr precision.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

/// pi at the current default precision.
inline Real pi_value() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

/// Re-rounds x into a fresh value carrying the current default precision.
/// Binary operations inherit precision from their operands, so entry points
/// renormalize caller-supplied values before computing with them.
inline Real at_current_precision(const Real& x) {
    Real y;
    mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

inline Real to_real(const Rational& q) { return Real(q); }

/// Deterministic scientific-notation rendering at a fixed digit count.
inline std::string format_real(const Real& x, unsigned digits10) {
    return x.str(digits10, std::ios_base::scientific);
}

}  // namespace splitlab
