// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Usage: acceptance [N ...]  (no arguments runs all nine)

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "splitlab/dynamics.hpp"
#include "splitlab/serialize.hpp"
#include "splitlab/tau.hpp"
#include "test_helpers.hpp"

using namespace splitlab;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const FormalSolution& sol40() { return splitlab::testing::solution40(); }

const ConstantEstimates& constants40() {
    static const ConstantEstimates ce = extract_constants(compute_J(sol40()), 256);
    return ce;
}

const SplittingReport& scan(const std::string& eps) {
    static std::map<std::string, SplittingReport> cache;
    auto it = cache.find(eps);
    if (it == cache.end()) {
        PrecisionConfig cfg{256, 40, 0.0};
        PrecisionGuard guard(256);
        it = cache.emplace(eps, splitting_scan(Real(eps), cfg)).first;
    }
    return it->second;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome criterion1() {
    const auto t0 = Clock::now();
    const FormalSolution sol = formal_solution(6);
    const double dt = seconds_since(t0);
    const bool values = sol.odd_polys.size() == 3 &&
                        sol.odd_polys[0] == Polynomial({0, frac(-1, 4)}) &&
                        sol.odd_polys[1] == Polynomial({0, frac(-47, 576), 0, frac(91, 864)}) &&
                        sol.odd_polys[2] == Polynomial({0, frac(-3703, 69120), 0, frac(185, 1152),
                                                        0, frac(-319, 2880)});
    return {values && dt < 1.0,
            "exact coefficient table" + std::string(values ? " reproduced" : " MISMATCH") +
                ", " + std::to_string(dt) + " s"};
}

Outcome criterion2() {
    const auto t0 = Clock::now();
    const ConstantEstimates& ce = constants40();
    const double dt = seconds_since(t0);
    PrecisionGuard guard(256);
    const Real da = abs(ce.alpha - Real("89.0334"));
    const Real d4pa = abs(4 * pi_value() * ce.alpha - Real("1118.8267"));
    const bool ok = da <= Real("0.05") && d4pa <= Real("0.7") && dt < 600.0;
    return {ok, "alpha = " + format_real(ce.alpha, 10) + " (|diff| = " + format_real(da, 3) +
                    " vs 0.05), 4*pi*alpha diff = " + format_real(d4pa, 3) + " vs 0.7, " +
                    std::to_string(dt) + " s"};
}

Outcome criterion3() {
    for (unsigned n : {8u, 16u, 24u}) {
        const FormalSolution sol = formal_solution(n);
        if (!residual(sol.a, n + 1).is_zero())
            return {false, "residual nonzero for order " + std::to_string(n)};
    }
    return {true, "residual identically zero through N+1 for N in {8, 16, 24}"};
}

Outcome criterion4() {
    std::mt19937 rng(777777);
    for (int rep = 0; rep < 20; ++rep) {
        const DSeries q = splitlab::testing::random_series(rng, 16);
        const DSeries g = splitlab::testing::random_series(rng, 16);
        const DSeries qg = mul(q, g);
        if (!(op_C1(q) == add(mul_scalar(op_S(op_S(q)), 2), q)))
            return {false, "half/full-step cosh identity failed"};
        if (!(op_S1(q) == mul_scalar(op_S(op_C(q)), 2)))
            return {false, "half/full-step sinh identity failed"};
        if (!(op_C1(qg) == add(mul(op_C1(q), op_C1(g)), mul(op_S1(q), op_S1(g)))) ||
            !(op_S1(qg) == add(mul(op_C1(q), op_S1(g)), mul(op_S1(q), op_C1(g)))))
            return {false, "full-step product rules failed"};
        if (!(op_C(qg) == add(mul(op_C(q), op_C(g)), mul(op_S(q), op_S(g)))) ||
            !(op_S(qg) == add(mul(op_C(q), op_S(g)), mul(op_S(q), op_C(g)))))
            return {false, "half-step product rules failed"};
        DSeries dDq(q.order());
        for (unsigned n = 1; n <= q.order(); ++n) dDq.set(n, q[n - 1].apply_D());
        const DSeries rhs =
            add(mul_scalar(apply_f_of_dD(OperatorKernel::sinc_half(16), q), 2),
                apply_f_of_dD(OperatorKernel::inversion_remainder(16), dDq));
        if (!(q == rhs)) return {false, "inversion relation failed"};
    }
    return {true, "all operator identities exact on 20 random degree-class series"};
}

Outcome criterion5() {
    const auto g = gevrey_profile(sol40().a, 256);
    PrecisionGuard guard(256);
    Real sup = 0, run_max_at_30 = 0;
    for (unsigned n = 0; n <= 40; ++n) {
        if (g[n] > sup) sup = g[n];
        if (n <= 30 && g[n] > run_max_at_30) run_max_at_30 = g[n];
    }
    const Real growth = sup / run_max_at_30 - 1;   // over the last 10 indices
    const bool stabilized = growth <= Real("0.01");
    // context: the same data under the one-power-higher factorial normalization
    const Real lvl_28 = g[28] / 29, lvl_38 = g[38] / 39;
    const Real growth_shifted = lvl_38 / lvl_28 - 1;
    std::string detail =
        "sup g_n = " + format_real(sup, 8) + " (finite; regression value), running-max growth "
        "over the last 10 indices = " + format_real(growth * 100, 3) + "% vs 1% allowed; "
        "profile grows ~linearly in n (g_n/(n+1) growth over the same range = " +
        format_real(growth_shifted * 100, 3) + "%, i.e. the (n+1)!-normalized profile does "
        "stabilize, and the J-profile |J_n|(2pi)^n/(n-2)! is decreasing)";
    return {stabilized, detail};
}

Outcome criterion6() {
    const std::vector<std::string> eps_values{"0.6", "0.5", "0.4", "0.3"};
    PrecisionGuard guard(256);
    std::string detail;
    // slope of ln(C eps^2) vs 1/eps isolates the exponential factor; the raw
    // ln C slope is biased by the known eps^-2 prefactor and is printed too
    double sx = 0, sy = 0, sxx = 0, sxy = 0, sy_raw = 0, sxy_raw = 0;
    for (const auto& es : eps_values) {
        const SplittingReport& rep = scan(es);
        const double eps = std::stod(es);
        const double spacing_err =
            std::abs(rep.zero_spacing.convert_to<double>() / (eps / 2) - 1);
        if (spacing_err > 0.05)
            return {false, "zero spacing off by " + std::to_string(spacing_err * 100) +
                               "% at eps = " + es};
        const double c = rep.amplitude.convert_to<double>();
        const double x = 1.0 / eps;
        const double y = std::log(c * eps * eps);
        const double y_raw = std::log(c);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        sy_raw += y_raw; sxy_raw += x * y_raw;
    }
    const double n = 4.0;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double slope_raw = (n * sxy_raw - sx * sy_raw) / (n * sxx - sx * sx);
    const double pi2 = 9.869604401089358;
    const double rel = std::abs(slope + pi2) / pi2;
    const bool ok = rel <= 0.02;
    detail = "slope of ln(C eps^2) vs 1/eps = " + std::to_string(slope) + " vs -pi^2 (" +
             std::to_string(rel * 100) + "% off, 2% allowed); raw ln C slope = " +
             std::to_string(slope_raw) + " (carries the eps^-2 prefactor); zero spacing within "
             "5% at every eps";
    return {ok, detail};
}

Outcome criterion7() {
    PrecisionGuard guard(256);
    const Real alpha = constants40().alpha;
    std::vector<double> best_err;
    std::string detail = "relative error of implied alpha (better normalization): ";
    for (const char* es : {"0.6", "0.5", "0.4", "0.3"}) {
        const SplittingReport& rep = scan(es);
        const Real e1 = abs(rep.implied_alpha_eps - alpha) / abs(alpha);
        const Real e2 = abs(rep.implied_alpha_d - alpha) / abs(alpha);
        const double be = std::min(e1.convert_to<double>(), e2.convert_to<double>());
        best_err.push_back(be);
        detail += std::string(es) + ": " + std::to_string(be * 100) + "%  ";
    }
    bool ok = best_err[2] <= 0.30 && best_err[3] <= 0.15;
    for (std::size_t i = 0; i + 1 < best_err.size(); ++i)
        if (best_err[i + 1] >= best_err[i]) ok = false;
    return {ok, detail + "(<=30% at 0.4, <=15% at 0.3, strictly decreasing)"};
}

Outcome criterion8() {
    PrecisionGuard guard(256);
    const SplittingReport& rep = scan("0.3");
    const Real gap = abs(rep.crossing_q_near_pi - pi_value());
    const Real bound = 10 * Real("0.09");
    return {gap <= bound, "|q_cross - pi| = " + format_real(gap, 4) + " vs " +
                              format_real(bound, 3)};
}

Outcome criterion9() {
    PrecisionConfig cfg{256, 40, 0.0};
    PrecisionGuard guard(256);
    std::mt19937 rng(13579);
    const Real eps("0.5");
    const Real tol = ldexp(Real(1), -248);

    std::uniform_real_distribution<double> dq(-1.0, 7.0), dp(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
        const PhasePoint z{Real(dq(rng)), Real(dp(rng))};
        const PhasePoint back = map_backward(map_forward(z, eps), eps);
        if (abs(back.q - z.q) > tol || abs(back.p - z.p) > tol)
            return {false, "map round-trip beyond tolerance"};
        const Real h = ldexp(Real(1), -128);
        const PhasePoint zq1 = map_forward({z.q + h, z.p}, eps);
        const PhasePoint zq0 = map_forward({z.q - h, z.p}, eps);
        const PhasePoint zp1 = map_forward({z.q, z.p + h}, eps);
        const PhasePoint zp0 = map_forward({z.q, z.p - h}, eps);
        const Real det = ((zq1.q - zq0.q) * (zp1.p - zp0.p) -
                          (zp1.q - zp0.q) * (zq1.p - zq0.p)) / (4 * h * h);
        if (abs(det - 1) > ldexp(Real(1), -100))
            return {false, "numeric symplecticity beyond tolerance"};
    }

    std::uniform_real_distribution<double> dz(-2.0, 2.0);
    const Real tau_tol = ldexp(Real(1), -64);
    for (int rep = 0; rep < 3; ++rep) {
        const Real z(dz(rng));
        const Real u = tanh(z);
        const auto coeffs = splitlab::testing::tanh_taylor(z, 41);
        for (unsigned n = 1; n <= 40; ++n)
            if (abs(tau(n).eval(u) - coeffs[n - 1]) > tau_tol)
                return {false, "tau identity beyond tolerance at n = " + std::to_string(n)};
    }

    const ManifoldSeries mu = manifold_series(eps, ManifoldKind::UnstableAtB, cfg);
    const Real s0 = manifold_seed(mu, cfg);
    if (conjugacy_residual(mu, s0) > pow(Real(10), -69))
        return {false, "conjugacy residual above threshold at the seed"};
    PrecisionConfig small{256, 24, 0.0};
    const ManifoldSeries m24 = manifold_series(eps, ManifoldKind::UnstableAtB, small);
    const Real r1 = conjugacy_residual(m24, Real(1) / 2);
    const Real r2 = conjugacy_residual(m24, Real(1));
    const Real expected = ldexp(Real(1), 25);
    if (r2 / r1 < expected / 8 || r2 / r1 > expected * 8)
        return {false, "conjugacy residual scaling off s^(M+1)"};

    return {true, "symplecticity, inverse round-trip, tau identity, conjugacy scaling"};
}

const char* kDescriptions[10] = {
    nullptr,
    "exact reproduction of the first coefficient table",
    "splitting constant alpha = 89.0334 +/- 0.05 at order 40",
    "residual of the computed solution vanishes (N = 8, 16, 24)",
    "operator identity suite exact on 20 random series",
    "Gevrey profile sup finite and running max stabilized within 1%",
    "exponential law: ln-amplitude slope = -pi^2 within 2%, zero spacing eps/2 within 5%",
    "implied alpha within 30%/15% at eps 0.4/0.3 and improving with eps",
    "manifold crossing stays within 10 eps^2 of q = pi at eps 0.3",
    "module property suites at default configuration",
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    Outcome (*runners[10])() = {nullptr,    criterion1, criterion2, criterion3, criterion4,
                                criterion5, criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (int k : which) {
        if (k < 1 || k > 9) {
            std::cerr << "unknown criterion " << k << "\n";
            return 64;
        }
        Outcome out;
        try {
            out = runners[k]();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << k << ": "
                  << kDescriptions[k] << " -- " << out.detail << "\n";
        if (!out.pass) ++failures;
    }
    return failures;
}
