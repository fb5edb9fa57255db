#pragma once

#include <array>
#include <vector>

#include "splitlab/bigfloat.hpp"
#include "splitlab/constants.hpp"
#include "splitlab/formal.hpp"

namespace splitlab {

struct PrecisionConfig {
    unsigned bits = 256;
    unsigned manifold_order = 40;
    /// Target magnitude for the conjugacy parameter at series evaluation;
    /// 0 means choose it so the last retained term sits below 2^(16-bits).
    double seed_magnitude = 0.0;
};

struct PhasePoint {
    Real q, p;
};

/// One step of the discretized pendulum: p' = p + eps sin q, q' = q + eps p'.
PhasePoint map_forward(const PhasePoint& z, const Real& eps);
/// Exact inverse: q = q' - eps p', p = p' - eps sin q.
PhasePoint map_backward(const PhasePoint& z, const Real& eps);

/// Saddle multiplier exponent: d = 2 asinh(eps/2).
Real d_of_eps(const Real& eps);

enum class Saddle { A, B };  // A = (0,0), B = (2 pi, 0)

struct FixedPointData {
    PhasePoint location;
    std::array<std::array<Real, 2>, 2> jacobian;
    Real lambda_unstable, lambda_stable;         // e^{+d}, e^{-d}
    std::array<Real, 2> eigvec_unstable, eigvec_stable;  // unit, positive q-component
};

FixedPointData fixed_point_data(const Real& eps, Saddle which);

enum class ManifoldKind { UnstableAtB, StableAtA };

/// Taylor parameterization sigma(s) = fixed point + sum c_k s^k of one
/// manifold branch (the primary heteroclinic branch, p < 0), satisfying
/// the conjugacy Phi(sigma(s)) = sigma(lambda s).
struct ManifoldSeries {
    ManifoldKind kind;
    Real eps;
    PhasePoint fixed_point;
    Real multiplier;                         // e^{+d} unstable / e^{-d} stable
    std::vector<std::array<Real, 2>> coeffs; // c_0 = 0, c_1 along the eigenvector
    unsigned bits = 0;
};

ManifoldSeries manifold_series(const Real& eps, ManifoldKind kind, const PrecisionConfig& cfg);

PhasePoint manifold_eval(const ManifoldSeries& ms, const Real& s);
/// || sigma(lambda s) - Phi(sigma(s)) ||_2
Real conjugacy_residual(const ManifoldSeries& ms, const Real& s);
/// Seed parameter magnitude per the truncation policy above.
Real manifold_seed(const ManifoldSeries& ms, const PrecisionConfig& cfg);

/// p-coordinate of the manifold at the given q on the primary branch;
/// seeds near the saddle, iterates the map to bracket qTarget, then bisects
/// on the parameter over one fundamental domain.
Real p_on_manifold_at_q(const ManifoldSeries& ms, const Real& q_target, const Real& eps,
                        const PrecisionConfig& cfg);

/// Heteroclinic reference q_0(t) = 4 arctan(e^{-t}).
Real q0_of_t(const Real& t);

/// Delta(t) = p_unstable(q_0(t)) - p_stable(q_0(t)); |t| <= 4/3.
Real vertical_distance(const Real& eps, const Real& t, const PrecisionConfig& cfg);
Real vertical_distance(const ManifoldSeries& unstable, const ManifoldSeries& stable,
                       const Real& t, const PrecisionConfig& cfg);

struct SplittingSample {
    Real t, delta, delta_over_cosh;
};

struct SplittingReport {
    Real epsilon, d;
    unsigned precision_bits = 0;
    std::vector<SplittingSample> samples;
    Real amplitude;           // fitted C in C sin(2 pi t/eps + phase)
    Real phase;
    Real fit_residual_rel;    // rms residual / |C|
    bool degraded_fit = false;
    Real implied_alpha_eps;   // C eps^2 e^{pi^2/eps} / (4 pi)
    Real implied_alpha_d;     // C eps^2 e^{pi^2/d} / (4 pi)
    Real zero_spacing;        // mean spacing of sign changes of Delta
    Real crossing_q_near_pi;  // q at the Delta zero closest to t = 0
};

/// Bits needed so the splitting signal clears evaluation noise.
unsigned required_bits(double eps);

/// Samples Delta/cosh over t in [-eps, eps] (>= 16 points per period) and
/// fits the fixed-frequency sinusoid. Throws std::invalid_argument when the
/// configured precision is below required_bits(eps).
SplittingReport splitting_scan(const Real& eps, const PrecisionConfig& cfg);

/// |phi_-(t) - p_numeric| where phi_- is the discrete momentum of the
/// formal-series manifold at optimal truncation and p_numeric the measured
/// stable-manifold momentum at the same q.
Real series_vs_manifold(const Real& eps, const Real& t, const FormalSolution& sol,
                        const PrecisionConfig& cfg);

}  // namespace splitlab
