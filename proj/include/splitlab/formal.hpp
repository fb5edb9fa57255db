#pragma once

#include <vector>

#include "splitlab/dseries.hpp"

namespace splitlab {

/// eps^2 as a d-series: 2 cosh(d) - 2 = sum_{k>=1} 2 d^(2k)/(2k)!.
DSeries eps_squared_series(unsigned order);

/// The odd polynomial I_{2n-1}(u); cached. Satisfies I_{2n-1}(1) = 4/(2n)!.
const Polynomial& I_poly(unsigned n);

/// sum_{n>=1} I_{2n-1}(u) d^(2n), truncated.
DSeries I_poly_series(unsigned order);

struct TrigPair {
    DSeries cos_w;    // cos(A*sqrt(1-u^2)) as a polynomial series
    DSeries sinc_w;   // sin(A*sqrt(1-u^2))/sqrt(1-u^2)
};

/// Requires A's d^0 and d^1 coefficients to vanish.
TrigPair trig_compose(const DSeries& a);

/// Residual of the difference equation for a trial series Z (even in d,
/// odd coefficients in u), computed to `order`.
DSeries residual(const DSeries& z, unsigned order);

/// Solves [(1-u^2)^2 A']' + R = 0 with A(0) = 0 and no singularity at u = 1:
/// A(u) = -int_0^u [int_1^t R] / (1-t^2)^2 dt, all exact.
/// Requires R odd with R(1) = 0; a violation signals an upstream defect.
Polynomial solve_step(const Polynomial& r);

struct FormalSolution {
    DSeries a;                          // sum A_{2n-1}(u) d^(2n), order N
    std::vector<Polynomial> odd_polys;  // A_1, A_3, A_5, ...

    unsigned order() const { return a.order(); }
};

/// Runs the inductive recurrence to the requested (even, >= 4) order.
FormalSolution formal_solution(unsigned order);

/// The four pinned rational polynomial series driving the tail transform:
/// the low-order part of the solution and the Q, Q1, V1 prefactors.
struct PrefactorSeries {
    DSeries u_init;   // initial part of the solution (d^2..d^6)
    DSeries q;        // unit series Q
    DSeries q1;       // prefactor series Q1
    DSeries v1;       // companion series V1
};

PrefactorSeries prefactor_series(unsigned order);

struct JPipeline {
    DSeries f;   // A - U, starts at d^8
    DSeries g;   // F / Q
    DSeries j;   // Q1 * S(G), even in u, odd in d, starts at d^11
};

/// Builds F, G, J from a solution of order >= 14 and checks their
/// structure (parity, leading order, degree bounds).
JPipeline compute_j_pipeline(const FormalSolution& sol);
DSeries compute_J(const FormalSolution& sol);

}  // namespace splitlab
