#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "splitlab/dynamics.hpp"
#include "splitlab/serialize.hpp"
#include "splitlab/tau.hpp"

namespace {

using namespace splitlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

struct RunConfig {
    unsigned series_order = 40;
    unsigned bits = 256;
    unsigned manifold_order = 40;
    std::vector<std::string> eps_list;
    std::string out_path;
    std::string format = "text";
    bool corrupt_tau = false;
};

void check_config(const RunConfig& rc, bool order_is_series_truncation) {
    if (order_is_series_truncation && (rc.series_order % 2 != 0 || rc.series_order < 8))
        throw CLI::ValidationError("--order must be even and >= 8");
    if (rc.bits < 128) throw CLI::ValidationError("--bits must be >= 128");
    if (rc.manifold_order < 10) throw CLI::ValidationError("--manifold-order must be >= 10");
    if (rc.format != "text" && rc.format != "csv" && rc.format != "json")
        throw CLI::ValidationError("--format must be text, csv, or json");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

int cmd_series(const RunConfig& rc) {
    const FormalSolution sol = formal_solution(rc.series_order);
    if (rc.format == "json") {
        std::cout << dump_deterministic(series_document(sol));
    } else {
        std::cout << "formal separatrix series, order " << rc.series_order << "\n";
        std::cout << "n\tA_{2n-1}(u)\n";
        for (std::size_t i = 0; i < sol.odd_polys.size(); ++i)
            std::cout << (i + 1) << "\t" << sol.odd_polys[i] << "\n";
    }
    if (!rc.out_path.empty())
        write_file(rc.out_path, dump_deterministic(series_document(sol)));
    return kExitOk;
}

int cmd_alpha(const RunConfig& rc) {
    const FormalSolution sol = formal_solution(rc.series_order);
    const DSeries j = compute_J(sol);
    const ConstantEstimates ce = extract_constants(j, rc.bits);
    if (rc.format == "json") {
        const std::string doc = dump_deterministic(series_document(sol, &ce));
        std::cout << doc;
        if (!rc.out_path.empty()) write_file(rc.out_path, doc);
        return kExitOk;
    }
    const unsigned digits = 12;
    std::cout << "splitting constants from the series tail (order " << rc.series_order
              << ", " << rc.bits << " bits)\n";
    std::cout << "alpha = " << format_real(ce.alpha, digits) << "  +/- "
              << format_real(ce.alpha_err, 3) << "\n";
    std::cout << "4*pi*alpha = " << format_real(4 * pi_value() * ce.alpha, digits) << "\n";
    std::cout << "beta  = " << format_real(ce.beta, digits) << "  +/- "
              << format_real(ce.beta_err, 3) << "\n";
    std::cout << "gamma = " << format_real(ce.gamma, digits) << "  +/- "
              << format_real(ce.gamma_err, 3) << "\n";
    std::cout << "\nalpha_n decay profile:\n";
    std::cout << "n\talpha_n\t\tn^7*alpha_n\n";
    for (const auto& iv : ce.alpha_seq) {
        Real n7 = pow(Real(iv.n), 7) * iv.value;
        std::cout << iv.n << "\t" << format_real(iv.value, 6) << "\t" << format_real(n7, 6)
                  << "\n";
    }
    if (!rc.out_path.empty())
        write_file(rc.out_path, dump_deterministic(series_document(sol, &ce)));
    return kExitOk;
}

int cmd_tau(const RunConfig& rc) {
    std::cout << "n\ttau_n(u)\tmonic form\n";
    for (unsigned n = 0; n <= rc.series_order; ++n) {
        const Polynomial& t = tau(n);
        const Polynomial monic = t * (Rational(1) / t.coeff(n));
        std::cout << n << "\t" << t << "\t" << monic << "\n";
    }
    return kExitOk;
}

std::string eps_label(const std::string& eps_str) {
    std::string s = eps_str;
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

int cmd_splitting(const RunConfig& rc) {
    if (rc.eps_list.empty()) throw CLI::ValidationError("splitting requires at least one --eps");
    PrecisionConfig cfg{rc.bits, rc.manifold_order, 0.0};
    bool any_ok = false;
    for (const std::string& es : rc.eps_list) {
        PrecisionGuard guard(rc.bits);
        Real eps(es);
        try {
            const SplittingReport rep = splitting_scan(eps, cfg);
            any_ok = true;
            if (rc.format == "json") {
                std::cout << dump_deterministic(report_document(rep));
            } else if (rc.format == "csv") {
                std::cout << report_csv(rep);
            } else {
                std::cout << "eps = " << es << "  d = " << format_real(rep.d, 12) << "\n";
                std::cout << "  amplitude C   = " << format_real(rep.amplitude, 12)
                          << (rep.degraded_fit ? "   [degraded fit]" : "") << "\n";
                std::cout << "  phase         = " << format_real(rep.phase, 6) << "\n";
                std::cout << "  fit residual  = " << format_real(rep.fit_residual_rel, 3) << "\n";
                std::cout << "  alpha (e^{-pi^2/eps} scale) = "
                          << format_real(rep.implied_alpha_eps, 10) << "\n";
                std::cout << "  alpha (e^{-pi^2/d} scale)   = "
                          << format_real(rep.implied_alpha_d, 10) << "\n";
                std::cout << "  zero spacing  = " << format_real(rep.zero_spacing, 8)
                          << "  (eps/2 = " << format_real(eps / 2, 8) << ")\n";
            }
            if (!rc.out_path.empty()) {
                const std::string base = rc.out_path + "_eps" + eps_label(es);
                write_file(base + ".json", dump_deterministic(report_document(rep)));
                write_file(base + ".csv", report_csv(rep));
            }
        } catch (const std::invalid_argument& e) {
            std::cout << "eps = " << es << "  SKIPPED: " << e.what() << "\n";
        }
    }
    return any_ok ? kExitOk : kExitConfig;
}

int cmd_compare(const RunConfig& rc) {
    const Real reference_alpha("89.0334");
    const FormalSolution sol = formal_solution(rc.series_order);
    const DSeries j = compute_J(sol);
    const ConstantEstimates ce = extract_constants(j, rc.bits);
    PrecisionGuard guard(rc.bits);
    std::cout << "series alpha = " << format_real(ce.alpha, 10) << "   (reference 89.0334)\n\n";
    std::cout << "eps\talpha[e^{-pi^2/eps}]\talpha[e^{-pi^2/d}]\trel.err(best)\n";

    PrecisionConfig cfg{rc.bits, rc.manifold_order, 0.0};
    bool ok = abs(ce.alpha - reference_alpha) <= Real("0.05");
    std::vector<Real> errs;
    for (const std::string& es : rc.eps_list) {
        Real eps(es);
        try {
            const SplittingReport rep = splitting_scan(eps, cfg);
            const Real e1 = abs(rep.implied_alpha_eps - ce.alpha) / abs(ce.alpha);
            const Real e2 = abs(rep.implied_alpha_d - ce.alpha) / abs(ce.alpha);
            const Real best = e1 < e2 ? e1 : e2;
            errs.push_back(best);
            std::cout << es << "\t" << format_real(rep.implied_alpha_eps, 8) << "\t"
                      << format_real(rep.implied_alpha_d, 8) << "\t" << format_real(best, 3)
                      << "\n";
        } catch (const std::invalid_argument& e) {
            std::cout << es << "\tSKIPPED: " << e.what() << "\n";
        }
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
        if (errs[i + 1] > errs[i]) ok = false;   // expect errors to shrink with eps
    if (!errs.empty() && errs.back() > Real("0.3")) ok = false;
    std::cout << "\nverdict: " << (ok ? "PASS" : "FAIL")
              << "  (series alpha vs 89.0334 and shrinking manifold-measured error)\n";
    return ok ? kExitOk : kExitValidation;
}

// ----- validate: invariant suite -------------------------------------------

struct Validator {
    int failures = 0;

    void report(const std::string& name, bool pass, const std::string& detail = "") {
        std::cout << (pass ? "PASS " : "FAIL ") << name;
        if (!pass && !detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        if (!pass) ++failures;
    }
};

DSeries random_series(std::mt19937& rng, unsigned order) {
    std::uniform_int_distribution<int> dist(-3, 3);
    DSeries s(order);
    for (unsigned n = 0; n <= order; ++n) {
        std::vector<Rational> c(n + 1);
        for (auto& x : c) x = dist(rng);
        s.set(n, Polynomial(std::move(c)));
    }
    return s;
}

Polynomial random_poly(std::mt19937& rng, unsigned deg) {
    std::uniform_int_distribution<int> dist(-9, 9);
    std::vector<Rational> c(deg + 1);
    for (auto& x : c) x = dist(rng);
    return Polynomial(std::move(c));
}

// Taylor coefficients of tanh(z + h) in h via the ODE T' = 1 - T^2;
// coefficient k equals tau_{k+1}(tanh z).
std::vector<Real> tanh_taylor(const Real& z, unsigned count) {
    std::vector<Real> c(count);
    c[0] = tanh(z);
    for (unsigned k = 0; k + 1 < count; ++k) {
        Real conv = 0;
        for (unsigned j = 0; j <= k; ++j) conv += c[j] * c[k - j];
        c[k + 1] = ((k == 0 ? Real(1) : Real(0)) - conv) / static_cast<int>(k + 1);
    }
    return c;
}

int cmd_validate(const RunConfig& rc) {
    if (rc.corrupt_tau) detail::corrupt_tau_cache_for_selftest();
    Validator v;
    std::mt19937 rng(20240311);
    const unsigned bits = rc.bits;
    PrecisionGuard guard(bits);

    {   // operator identities on random series
        bool ok_c1 = true, ok_s1 = true, ok_prod = true, ok_inv = true;
        for (int rep = 0; rep < 6 && (ok_c1 && ok_s1 && ok_prod && ok_inv); ++rep) {
            const DSeries q = random_series(rng, 16);
            const DSeries g = random_series(rng, 16);
            ok_c1 = op_C1(q) == add(mul_scalar(op_S(op_S(q)), 2), q);
            ok_s1 = op_S1(q) == mul_scalar(op_S(op_C(q)), 2);
            ok_prod = op_C(mul(q, g)) == add(mul(op_C(q), op_C(g)), mul(op_S(q), op_S(g))) &&
                      op_S1(mul(q, g)) == add(mul(op_C1(q), op_S1(g)), mul(op_S1(q), op_C1(g)));
            DSeries dDq(q.order());
            for (unsigned n = 1; n <= q.order(); ++n) dDq.set(n, q[n - 1].apply_D());
            const DSeries rhs = add(mul_scalar(apply_f_of_dD(OperatorKernel::sinc_half(16), q), 2),
                                    apply_f_of_dD(OperatorKernel::inversion_remainder(16), dDq));
            ok_inv = q == rhs;
        }
        v.report("operator identity C1 = 2 S^2 + Id", ok_c1);
        v.report("operator identity S1 = 2 S C", ok_s1);
        v.report("operator product rules", ok_prod);
        v.report("inversion relation Q = 2 J Q + F(dD) dD Q", ok_inv);
    }

    {   // residual of the computed solution vanishes
        const FormalSolution sol = formal_solution(8);
        const DSeries r = residual(sol.a, 9);
        v.report("residual of order-8 solution vanishes through d^9", r.is_zero());
    }

    {   // tau identity against the Taylor-differentiation oracle
        bool ok = true;
        std::uniform_real_distribution<double> dz(-2.0, 2.0);
        const Real tol = ldexp(Real(1), -static_cast<int>(bits) / 4);
        for (int rep = 0; rep < 4 && ok; ++rep) {
            const Real z(dz(rng));
            const Real u = tanh(z);
            const auto coeffs = tanh_taylor(z, 34);
            for (unsigned n = 1; n <= 33 && ok; ++n)
                ok = abs(tau(n).eval(u) - coeffs[n - 1]) < tol;
        }
        v.report("tau_n(tanh z) matches (d/dz)^{n-1} tanh(z)/(n-1)!", ok);
    }

    {   // basis round-trip and D-norm inequalities
        bool ok_rt = true, ok_d1 = true, ok_d2 = true;
        for (int rep = 0; rep < 8; ++rep) {
            const Polynomial p = random_poly(rng, 5 + 7 * rep);
            ok_rt = ok_rt && from_tau(to_tau(p)) == p;
            const unsigned n = static_cast<unsigned>(p.degree() < 1 ? 1 : p.degree());
            const Real slack = ldexp(Real(1), -static_cast<int>(bits) / 2);
            ok_d1 = ok_d1 && norm(p.apply_D(), n + 1, bits) <= Real(n) * norm(p, n, bits) + slack;
            TauExpansion e = to_tau(p);
            if (!e.coeffs.empty()) e.coeffs[0] = 0;
            const Polynomial p0 = from_tau(e);
            if (!p0.is_zero())
                ok_d2 = ok_d2 && norm(p0, n, bits) <= norm(p0.apply_D(), n + 1, bits) + slack;
        }
        v.report("tau basis round-trip is the identity", ok_rt);
        v.report("norm inequality |Dp|_{n+1} <= n |p|_n", ok_d1);
        v.report("norm inequality |p|_n <= |Dp|_{n+1} (zero tau_0 part)", ok_d2);
    }

    {   // map invariants at random points
        PrecisionConfig cfg{bits, 24, 0.0};
        const Real eps("0.5");
        std::uniform_real_distribution<double> dq(0.5, 5.5), dp(-2.5, 0.5);
        bool ok_rt = true, ok_sympl = true;
        const Real tol = ldexp(Real(1), -static_cast<int>(bits) + 8);
        for (int rep = 0; rep < 5; ++rep) {
            const PhasePoint z{Real(dq(rng)), Real(dp(rng))};
            const PhasePoint back = map_backward(map_forward(z, eps), eps);
            ok_rt = ok_rt && abs(back.q - z.q) < tol && abs(back.p - z.p) < tol;
            const Real h = ldexp(Real(1), -static_cast<int>(bits) / 2);
            const PhasePoint zq1 = map_forward({z.q + h, z.p}, eps);
            const PhasePoint zq0 = map_forward({z.q - h, z.p}, eps);
            const PhasePoint zp1 = map_forward({z.q, z.p + h}, eps);
            const PhasePoint zp0 = map_forward({z.q, z.p - h}, eps);
            const Real det = ((zq1.q - zq0.q) * (zp1.p - zp0.p) -
                              (zp1.q - zp0.q) * (zq1.p - zq0.p)) / (4 * h * h);
            ok_sympl = ok_sympl && abs(det - 1) < ldexp(Real(1), -static_cast<int>(bits) / 2 + 16);
        }
        v.report("map round-trip backward(forward(z)) = z", ok_rt);
        v.report("map symplecticity det dPhi = 1", ok_sympl);

        const FixedPointData fp = fixed_point_data(eps, Saddle::B);
        const Real two_cosh_d = 2 * cosh(d_of_eps(eps));
        bool ok_eig = abs(fp.lambda_unstable * fp.lambda_stable - 1) < tol &&
                      abs(fp.lambda_unstable + fp.lambda_stable - two_cosh_d) < tol &&
                      abs(fp.lambda_unstable + fp.lambda_stable - (2 + eps * eps)) < tol;
        v.report("multipliers satisfy l*1/l = 1 and l + 1/l = 2 + eps^2", ok_eig);

        const ManifoldSeries mu = manifold_series(eps, ManifoldKind::UnstableAtB, cfg);
        const Real s1("0.5");
        const Real r1 = conjugacy_residual(mu, s1);
        const Real r2 = conjugacy_residual(mu, 2 * s1);
        const Real ratio = r2 / r1;
        const Real expected = ldexp(Real(1), static_cast<int>(cfg.manifold_order) + 1);
        bool ok_conj = ratio > expected / 8 && ratio < expected * 8;
        v.report("conjugacy residual scales like s^(M+1)", ok_conj,
                 "ratio " + format_real(ratio, 4));
    }

    std::cout << (v.failures == 0 ? "validate: all invariants hold\n"
                                  : "validate: FAILURES detected\n");
    return v.failures == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separatrix splitting laboratory for the discretized pendulum"};
    app.require_subcommand(1);

    RunConfig rc;
    if (const char* env = std::getenv("SPLITTING_LAB_BITS")) {
        try {
            rc.bits = static_cast<unsigned>(std::stoul(env));
        } catch (...) {
            std::cerr << "invalid SPLITTING_LAB_BITS value: " << env << "\n";
            return kExitConfig;
        }
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--order", rc.series_order, "series truncation order (even, >= 8)");
        cmd->add_option("--bits", rc.bits, "working precision in bits (>= 128)");
        cmd->add_option("--eps", rc.eps_list, "epsilon value (repeatable)");
        cmd->add_option("--manifold-order", rc.manifold_order, "manifold Taylor order");
        cmd->add_option("--out", rc.out_path, "output artifact path (or base path)");
        cmd->add_option("--format", rc.format, "output format: text|csv|json");
    };

    CLI::App* c_series = app.add_subcommand("series", "compute the formal series; dump exact coefficients");
    CLI::App* c_alpha = app.add_subcommand("alpha", "extract the splitting constants from the series tail");
    CLI::App* c_tau = app.add_subcommand("tau", "print the tau basis polynomials");
    CLI::App* c_split = app.add_subcommand("splitting", "measure the manifold splitting at given eps");
    CLI::App* c_cmp = app.add_subcommand("compare", "cross-validate series alpha against measured splitting");
    CLI::App* c_val = app.add_subcommand("validate", "run the invariant suite");
    for (CLI::App* c : {c_series, c_alpha, c_tau, c_split, c_cmp, c_val}) add_common(c);
    c_val->add_flag("--selftest-corrupt-tau", rc.corrupt_tau,
                    "negative control: corrupt the tau cache first")
        ->group("");

    try {
        app.parse(argc, argv);
        const bool series_truncation = c_series->parsed() || c_alpha->parsed() || c_cmp->parsed();
        check_config(rc, series_truncation);
        if (c_series->parsed()) return cmd_series(rc);
        if (c_alpha->parsed()) return cmd_alpha(rc);
        if (c_tau->parsed()) return cmd_tau(rc);
        if (c_split->parsed()) return cmd_splitting(rc);
        if (c_cmp->parsed()) return cmd_compare(rc);
        if (c_val->parsed()) return cmd_validate(rc);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
