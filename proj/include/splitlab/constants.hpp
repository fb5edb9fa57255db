#pragma once

#include <vector>

#include "splitlab/dseries.hpp"
#include "splitlab/formal.hpp"

namespace splitlab {

/// One extracted tail coefficient: the d-index it was read at and its value.
struct IndexedValue {
    unsigned n;
    Real value;
};

struct ConstantEstimates {
    std::vector<IndexedValue> alpha_seq;   // n odd >= 11
    std::vector<IndexedValue> beta_seq;    // n odd >= 9
    std::vector<IndexedValue> gamma_seq;   // n odd >= 7
    std::vector<Real> alpha_partial;       // scaled partial sums of alpha_seq
    Real alpha, beta, gamma;               // extrapolated sums
    Real alpha_err, beta_err, gamma_err;   // spread of the last two extrapolation levels
    unsigned precision_bits = 0;
};

/// Reads the splitting constants off the tau-expansion of S(d^{-1} J).
/// J must be available to order >= 25; ~40 gives four stable digits.
ConstantEstimates extract_constants(const DSeries& j, unsigned bits);

/// g_n = norm(S_n, n) (2 pi)^n / n! for each n; bounded iff the series is
/// Gevrey-1 with rate (2 pi)^{-n} n!.
std::vector<Real> gevrey_profile(const DSeries& s, unsigned bits);

inline constexpr int kOptimalTruncation = -1;

/// Numeric evaluation sum S_n(u) d^n. truncation >= 0 sums that many leading
/// terms; kOptimalTruncation applies the least-term rule (stop right before
/// the term of minimal magnitude). Requires |u| < 1 and d > 0.
Real eval_series(const DSeries& s, const Real& d, const Real& u, int truncation);

}  // namespace splitlab
