#include "splitlab/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace splitlab {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

PhasePoint map_forward(const PhasePoint& z, const Real& eps) {
    Real p_next = z.p + eps * sin(z.q);
    return {z.q + eps * p_next, p_next};
}

PhasePoint map_backward(const PhasePoint& z, const Real& eps) {
    Real q_prev = z.q - eps * z.p;
    return {q_prev, z.p - eps * sin(q_prev)};
}

Real d_of_eps(const Real& eps) {
    require(eps > 0, "d_of_eps: eps must be positive");
    const Real e = at_current_precision(eps);
    return 2 * asinh(e / 2);
}

FixedPointData fixed_point_data(const Real& eps_in, Saddle which) {
    require(eps_in > 0, "fixed_point_data: eps must be positive");
    const Real eps = at_current_precision(eps_in);
    FixedPointData fp;
    const Real two_pi = 2 * pi_value();
    fp.location = {which == Saddle::A ? Real(0) : two_pi, Real(0)};
    // dPhi at (q*, 0) with cos q* = 1: [[1+eps^2, eps], [eps, 1]]
    fp.jacobian = {{{1 + eps * eps, eps}, {eps, Real(1)}}};
    const Real d = d_of_eps(eps);
    fp.lambda_unstable = exp(d);
    fp.lambda_stable = exp(-d);
    auto unit_vec = [&](const Real& lambda) {
        Real vq = lambda - 1, vp = eps;
        if (vq < 0) { vq = -vq; vp = -vp; }  // normalize to positive q-component
        Real n = sqrt(vq * vq + vp * vp);
        return std::array<Real, 2>{vq / n, vp / n};
    };
    fp.eigvec_unstable = unit_vec(fp.lambda_unstable);
    fp.eigvec_stable = unit_vec(fp.lambda_stable);
    return fp;
}

ManifoldSeries manifold_series(const Real& eps_in, ManifoldKind kind, const PrecisionConfig& cfg) {
    require(eps_in > 0, "manifold_series: eps must be positive");
    require(cfg.bits >= 128 && cfg.manifold_order >= 10, "manifold_series: config out of range");
    PrecisionGuard guard(cfg.bits);
    const Real eps = at_current_precision(eps_in);
    const unsigned M = cfg.manifold_order;

    ManifoldSeries ms;
    ms.kind = kind;
    ms.eps = Real(eps);
    ms.bits = cfg.bits;
    const Real d = d_of_eps(eps);
    const Real lambda = kind == ManifoldKind::UnstableAtB ? Real(exp(d)) : Real(exp(-d));
    ms.multiplier = lambda;
    const Real two_pi = 2 * pi_value();
    ms.fixed_point = {kind == ManifoldKind::UnstableAtB ? two_pi : Real(0), Real(0)};

    // c_1: eigenvector (lambda-1, eps) scaled to unit length. Negating it
    // orients both kinds into the primary branch (q in (0, 2 pi), p < 0):
    // the unstable direction leaves B toward decreasing q, the stable one
    // has vq < 0 and flips into q > 0.
    Real vq = lambda - 1, vp = eps;
    Real n1 = sqrt(vq * vq + vp * vp);
    vq /= -n1; vp /= -n1;

    std::vector<Real> a(M + 1), b(M + 1), S(M + 1), C(M + 1);
    a[1] = vq; b[1] = vp;
    S[0] = 0; C[0] = 1;
    S[1] = a[1]; C[1] = 0;
    const Real eps2 = eps * eps;
    std::vector<Real> lam_pow(M + 1);
    lam_pow[0] = 1;
    for (unsigned k = 1; k <= M; ++k) lam_pow[k] = lam_pow[k - 1] * lambda;

    for (unsigned k = 2; k <= M; ++k) {
        Real r = 0;
        for (unsigned j = 1; j < k; ++j) r += j * a[j] * C[k - j];
        r /= k;
        // (J - lambda^k I) c_k = -(eps^2 r, eps r)
        const Real a11 = 1 + eps2 - lam_pow[k], a12 = eps;
        const Real a21 = eps, a22 = 1 - lam_pow[k];
        const Real det = a11 * a22 - a12 * a21;
        if (abs(det) < ldexp(Real(1), -static_cast<int>(cfg.bits) + 8))
            throw std::runtime_error("manifold_series: near-singular order-k conjugacy system");
        const Real r1 = -eps2 * r, r2 = -eps * r;
        a[k] = (r1 * a22 - a12 * r2) / det;
        b[k] = (a11 * r2 - r1 * a21) / det;
        S[k] = a[k] + r;
        Real ck = 0;
        for (unsigned j = 1; j <= k; ++j) ck += j * a[j] * S[k - j];
        C[k] = -ck / k;
    }

    ms.coeffs.resize(M + 1);
    for (unsigned k = 0; k <= M; ++k) ms.coeffs[k] = {a[k], b[k]};
    return ms;
}

PhasePoint manifold_eval(const ManifoldSeries& ms, const Real& s) {
    PrecisionGuard guard(ms.bits);
    Real q = 0, p = 0;
    for (std::size_t k = ms.coeffs.size(); k-- > 1;) {
        q = (q + ms.coeffs[k][0]) * s;
        p = (p + ms.coeffs[k][1]) * s;
    }
    return {ms.fixed_point.q + q, ms.fixed_point.p + p};
}

Real conjugacy_residual(const ManifoldSeries& ms, const Real& s) {
    PrecisionGuard guard(ms.bits);
    const PhasePoint lhs = map_forward(manifold_eval(ms, s), ms.eps);
    const PhasePoint rhs = manifold_eval(ms, ms.multiplier * s);
    const Real dq = lhs.q - rhs.q, dp = lhs.p - rhs.p;
    return sqrt(dq * dq + dp * dp);
}

Real manifold_seed(const ManifoldSeries& ms, const PrecisionConfig& cfg) {
    if (cfg.seed_magnitude > 0) return Real(cfg.seed_magnitude);
    unsigned L = static_cast<unsigned>(ms.coeffs.size()) - 1;
    Real cL = 0;
    while (L > 1) {
        cL = sqrt(ms.coeffs[L][0] * ms.coeffs[L][0] + ms.coeffs[L][1] * ms.coeffs[L][1]);
        if (cL != 0) break;
        --L;
    }
    const Real target = ldexp(Real(1), -static_cast<int>(cfg.bits) + 16);
    if (cL == 0) return Real("0.125");
    // keep the last retained term below target even after one expanding step,
    // which also bounds the conjugacy residual at the seed
    const Real amp = ms.multiplier > 1 ? ms.multiplier : 1 / ms.multiplier;
    Real s = exp(log(target / cL) / static_cast<int>(L)) / amp;
    if (s > Real("0.125")) s = Real("0.125");
    return s;
}

Real q0_of_t(const Real& t) {
    const Real tt = at_current_precision(t);
    return 4 * atan(exp(-tt));
}

namespace {

struct BranchWalk {
    // q after n steps of the expanding iteration from sigma(s)
    static PhasePoint advance(const ManifoldSeries& ms, const Real& s, unsigned n) {
        PhasePoint z = manifold_eval(ms, s);
        for (unsigned i = 0; i < n; ++i)
            z = ms.kind == ManifoldKind::UnstableAtB ? map_forward(z, ms.eps)
                                                     : map_backward(z, ms.eps);
        return z;
    }
};

}  // namespace

Real p_on_manifold_at_q(const ManifoldSeries& ms, const Real& q_target_in, const Real& eps,
                        const PrecisionConfig& cfg) {
    require(eps == ms.eps, "p_on_manifold_at_q: eps does not match the manifold series");
    PrecisionGuard guard(cfg.bits);
    const Real q_target = at_current_precision(q_target_in);
    const Real two_pi = 2 * pi_value();
    require(q_target > 0 && q_target < two_pi,
            "p_on_manifold_at_q: target q must lie strictly between the fixed points");
    // q decreases along the walk from B (unstable), increases from A (stable)
    const bool decreasing = ms.kind == ManifoldKind::UnstableAtB;
    Real s0 = manifold_seed(ms, cfg);
    const Real lambda_expand = decreasing ? ms.multiplier : 1 / ms.multiplier;

    auto crossed = [&](const PhasePoint& z) {
        return decreasing ? z.q <= q_target : z.q >= q_target;
    };

    PhasePoint z = manifold_eval(ms, s0);
    for (int shrink = 0; crossed(z); ++shrink) {
        // target sits between the saddle and the seed; a smaller seed only
        // sharpens the truncation
        if (shrink > 4 * static_cast<int>(cfg.bits))
            throw std::domain_error("p_on_manifold_at_q: target too close to the fixed point");
        s0 /= lambda_expand;
        z = manifold_eval(ms, s0);
    }
    unsigned n = 0;
    const unsigned max_steps = 200000;
    Real q_prev = z.q;
    while (!crossed(z)) {
        z = ms.kind == ManifoldKind::UnstableAtB ? map_forward(z, ms.eps)
                                                 : map_backward(z, ms.eps);
        ++n;
        if (n > max_steps) throw std::runtime_error("p_on_manifold_at_q: no crossing found");
        if (n > 1 && (decreasing ? z.q > q_prev : z.q < q_prev))
            throw std::runtime_error("p_on_manifold_at_q: non-monotone bracketing (folding?)");
        q_prev = z.q;
    }
    // crossing between steps n-1 and n: bisect s over [s0, lambda_expand*s0]
    // at fixed iteration count n-1
    const unsigned walk = n - 1;
    Real lo = s0, hi = lambda_expand * s0;
    const Real tol = ldexp(Real(1), -static_cast<int>(cfg.bits) + 2) * s0;
    while (hi - lo > tol) {
        const Real mid = (lo + hi) / 2;
        const PhasePoint zm = BranchWalk::advance(ms, mid, walk);
        if (crossed(zm)) hi = mid; else lo = mid;
    }
    const PhasePoint best = BranchWalk::advance(ms, (lo + hi) / 2, walk);
    return best.p;
}

Real vertical_distance(const ManifoldSeries& unstable, const ManifoldSeries& stable,
                       const Real& t_in, const PrecisionConfig& cfg) {
    require(abs(t_in) <= Real(4) / 3, "vertical_distance: |t| must be <= 4/3");
    PrecisionGuard guard(cfg.bits);
    const Real t = at_current_precision(t_in);
    const Real q_target = q0_of_t(t);
    const Real pu = p_on_manifold_at_q(unstable, q_target, unstable.eps, cfg);
    const Real ps = p_on_manifold_at_q(stable, q_target, stable.eps, cfg);
    return pu - ps;
}

Real vertical_distance(const Real& eps, const Real& t, const PrecisionConfig& cfg) {
    const ManifoldSeries mu = manifold_series(eps, ManifoldKind::UnstableAtB, cfg);
    const ManifoldSeries sA = manifold_series(eps, ManifoldKind::StableAtA, cfg);
    return vertical_distance(mu, sA, t, cfg);
}

unsigned required_bits(double eps) {
    const double pi2 = 9.869604401089358;
    return static_cast<unsigned>(3.5 * (pi2 / eps) / std::log(2.0)) + 64;
}

SplittingReport splitting_scan(const Real& eps, const PrecisionConfig& cfg) {
    const unsigned need = required_bits(eps.convert_to<double>());
    if (cfg.bits < need) {
        std::ostringstream os;
        os << "splitting_scan: eps = " << eps.convert_to<double>() << " needs >= " << need
           << " bits, configured " << cfg.bits;
        throw std::invalid_argument(os.str());
    }
    PrecisionGuard guard(cfg.bits);
    const Real eps_w = at_current_precision(eps);

    SplittingReport rep;
    rep.epsilon = eps_w;
    rep.d = d_of_eps(eps_w);
    rep.precision_bits = cfg.bits;

    const ManifoldSeries mu = manifold_series(eps_w, ManifoldKind::UnstableAtB, cfg);
    const ManifoldSeries sA = manifold_series(eps_w, ManifoldKind::StableAtA, cfg);

    // 20 points per period of sin(2 pi t/eps), window [-eps, eps] = 2 periods
    const int half = 20;
    const Real step = eps_w / half;
    for (int i = -half; i <= half; ++i) {
        const Real t = i * step;
        const Real delta = vertical_distance(mu, sA, t, cfg);
        rep.samples.push_back({t, delta, delta / cosh(t)});
    }

    // least squares y ~ A sin(w t) + B cos(w t), w = 2 pi / eps
    const Real w = 2 * pi_value() / eps_w;
    Real sss = 0, scc = 0, ssc = 0, sy_s = 0, sy_c = 0;
    for (const auto& sm : rep.samples) {
        const Real si = sin(w * sm.t), co = cos(w * sm.t);
        sss += si * si;
        scc += co * co;
        ssc += si * co;
        sy_s += sm.delta_over_cosh * si;
        sy_c += sm.delta_over_cosh * co;
    }
    const Real det = sss * scc - ssc * ssc;
    const Real A = (sy_s * scc - ssc * sy_c) / det;
    const Real B = (sss * sy_c - sy_s * ssc) / det;
    rep.amplitude = sqrt(A * A + B * B);
    if (A < 0) rep.amplitude = -rep.amplitude;  // signed amplitude, phase in (-pi/2, pi/2]
    rep.phase = atan2(B, A);
    if (rep.phase > pi_value() / 2) rep.phase -= pi_value();
    if (rep.phase <= -pi_value() / 2) rep.phase += pi_value();

    Real ss_res = 0;
    for (const auto& sm : rep.samples) {
        const Real fit = A * sin(w * sm.t) + B * cos(w * sm.t);
        const Real r = sm.delta_over_cosh - fit;
        ss_res += r * r;
    }
    rep.fit_residual_rel = sqrt(ss_res / static_cast<int>(rep.samples.size())) / abs(rep.amplitude);
    rep.degraded_fit = rep.fit_residual_rel > Real("0.2");

    const Real pi2 = pi_value() * pi_value();
    rep.implied_alpha_eps = rep.amplitude * eps_w * eps_w * exp(pi2 / eps_w) / (4 * pi_value());
    rep.implied_alpha_d = rep.amplitude * eps_w * eps_w * exp(pi2 / rep.d) / (4 * pi_value());

    // zero spacing and the crossing nearest t = 0 from sample sign changes
    std::vector<Real> zeros;
    for (std::size_t i = 1; i < rep.samples.size(); ++i) {
        const Real &y0 = rep.samples[i - 1].delta, &y1 = rep.samples[i].delta;
        if (y0 == 0) { zeros.push_back(rep.samples[i - 1].t); continue; }
        if ((y0 < 0) != (y1 < 0)) {
            const Real t0 = rep.samples[i - 1].t, t1 = rep.samples[i].t;
            zeros.push_back(t0 - y0 * (t1 - t0) / (y1 - y0));
        }
    }
    if (zeros.size() >= 2) {
        Real acc = 0;
        for (std::size_t i = 1; i < zeros.size(); ++i) acc += zeros[i] - zeros[i - 1];
        rep.zero_spacing = acc / static_cast<int>(zeros.size() - 1);
    } else {
        rep.zero_spacing = 0;
    }
    if (!zeros.empty()) {
        Real best = zeros.front();
        for (const Real& z : zeros)
            if (abs(z) < abs(best)) best = z;
        rep.crossing_q_near_pi = q0_of_t(best);
    } else {
        rep.crossing_q_near_pi = 0;
    }
    return rep;
}

Real series_vs_manifold(const Real& eps_in, const Real& t_in, const FormalSolution& sol,
                        const PrecisionConfig& cfg) {
    require(abs(t_in) <= Real(4) / 3, "series_vs_manifold: |t| must be <= 4/3");
    PrecisionGuard guard(cfg.bits);
    const Real eps = at_current_precision(eps_in);
    const Real t = at_current_precision(t_in);
    const Real d = d_of_eps(eps);
    auto xi_minus = [&](const Real& tt) -> Real {
        const Real arg = d / eps * tt;
        const Real u = tanh(arg);
        const Real q0d = 4 * atan(exp(-arg));
        const Real a_val = eval_series(sol.a, d, u, kOptimalTruncation);
        return sqrt(1 - u * u) * a_val + q0d;
    };
    const Real xi_t = xi_minus(t);
    const Real phi_minus = (xi_t - xi_minus(t - eps)) / eps;
    const ManifoldSeries sA = manifold_series(eps, ManifoldKind::StableAtA, cfg);
    const Real p_num = p_on_manifold_at_q(sA, xi_t, eps, cfg);
    return abs(phi_minus - p_num);
}

}  // namespace splitlab
