#include "splitlab/constants.hpp"

#include <sstream>
#include <stdexcept>

#include "splitlab/tau.hpp"

namespace splitlab {

namespace {

// Richardson step for partial sums whose tail behaves like c * n^{-p}:
// S'_m = S_m + (S_m - S_prev) * m^{-p} / (prev^{-p} - m^{-p}).
std::vector<IndexedValue> richardson(const std::vector<IndexedValue>& sums, int p) {
    std::vector<IndexedValue> out;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        const Real m(sums[i].n), prev(sums[i - 1].n);
        const Real wm = pow(m, -p), wp = pow(prev, -p);
        Real corr = (sums[i].value - sums[i - 1].value) * wm / (wp - wm);
        out.push_back({sums[i].n, sums[i].value + corr});
    }
    return out;
}

struct Extrapolated {
    Real value, err;
    std::vector<Real> partials;
};

Extrapolated extrapolate(const std::vector<IndexedValue>& seq, int p, const Real& scale) {
    Extrapolated ex;
    if (seq.empty()) throw std::invalid_argument("extract_constants: empty coefficient sequence");
    std::vector<IndexedValue> sums;
    Real acc = 0;
    for (const auto& iv : seq) {
        acc += iv.value;
        sums.push_back({iv.n, acc * scale});
        ex.partials.push_back(acc * scale);
    }
    if (sums.size() < 3) {
        ex.value = sums.back().value;
        ex.err = abs(sums.back().value - sums.front().value);
        return ex;
    }
    const auto level1 = richardson(sums, p);
    const auto level2 = richardson(level1, p + 1);
    ex.value = level2.back().value;
    ex.err = abs(level2.back().value - level1.back().value);
    return ex;
}

}  // namespace

ConstantEstimates extract_constants(const DSeries& j, unsigned bits) {
    if (static_cast<int>(j.order()) < 25) {
        std::ostringstream os;
        os << "extract_constants: J order " << j.order()
           << " is insufficient; compute to order >= 25 (40 recommended)";
        throw std::invalid_argument(os.str());
    }
    PrecisionGuard guard(bits);
    const DSeries e = op_S(j.shift_down(1));

    ConstantEstimates ce;
    ce.precision_bits = bits;
    const Real two_pi = 2 * pi_value();

    // (2 pi)^(m-1) (-1)^((m-1)/2) / (m-1)!, the inverse of the tau-template
    // weight at odd index m; the overall minus selects the orientation in
    // which the measured vertical distance has a positive leading amplitude.
    auto read = [&](const TauExpansion& te, unsigned m) -> Real {
        const Rational& c = te.coeff(m);
        Real v = -Real(c) * pow(two_pi, static_cast<int>(m - 1)) / Real(factorial(m - 1));
        if (((m - 1) / 2) % 2 == 1) v = -v;
        return v;
    };

    for (unsigned n = 11; n <= e.order(); n += 2) {
        const TauExpansion te = e[n].is_zero() ? TauExpansion{} : to_tau(e[n]);
        ce.alpha_seq.push_back({n, read(te, n)});
        ce.beta_seq.push_back({n - 2, read(te, n - 2)});
        ce.gamma_seq.push_back({n - 4, read(te, n - 4)});
    }

    // alpha = 4 sum alpha_n (same constant for beta, gamma); the tails decay
    // at least like n^-7 / n^-5 / n^-3, which fixes the extrapolation powers.
    const Real four(4);
    auto ea = extrapolate(ce.alpha_seq, 6, four);
    auto eb = extrapolate(ce.beta_seq, 4, four);
    auto eg = extrapolate(ce.gamma_seq, 2, four);
    ce.alpha = ea.value;
    ce.alpha_err = ea.err;
    ce.alpha_partial = std::move(ea.partials);
    ce.beta = eb.value;
    ce.beta_err = eb.err;
    ce.gamma = eg.value;
    ce.gamma_err = eg.err;
    return ce;
}

std::vector<Real> gevrey_profile(const DSeries& s, unsigned bits) {
    PrecisionGuard guard(bits);
    std::vector<Real> g(s.order() + 1);
    const Real two_pi = 2 * pi_value();
    Real fact(1);
    for (unsigned n = 0; n <= s.order(); ++n) {
        if (n > 0) fact *= n;
        if (s[n].is_zero()) {
            g[n] = 0;
            continue;
        }
        g[n] = norm(s[n], n, bits) * pow(two_pi, static_cast<int>(n)) / fact;
    }
    return g;
}

Real eval_series(const DSeries& s, const Real& d_in, const Real& u_in, int truncation) {
    if (abs(u_in) >= 1) throw std::domain_error("eval_series: |u| must be < 1");
    if (d_in <= 0) throw std::domain_error("eval_series: d must be positive");
    const Real d = at_current_precision(d_in);
    const Real u = at_current_precision(u_in);
    std::vector<Real> terms(s.order() + 1);
    Real dn(1);
    for (unsigned n = 0; n <= s.order(); ++n) {
        terms[n] = s[n].is_zero() ? Real(0) : s[n].eval(u) * dn;
        dn *= d;
    }
    unsigned stop = s.order() + 1;
    if (truncation >= 0) {
        stop = std::min<unsigned>(truncation, stop);
    } else {
        // least-term rule: stop just before the smallest nonzero term
        bool found = false;
        Real best(0);
        for (unsigned n = 0; n <= s.order(); ++n) {
            if (terms[n] == 0) continue;
            if (!found || abs(terms[n]) < best) {
                best = abs(terms[n]);
                stop = n;
                found = true;
            }
        }
        if (!found) stop = 0;
    }
    Real acc = 0;
    for (unsigned n = 0; n < stop; ++n) acc += terms[n];
    return acc;
}

}  // namespace splitlab
