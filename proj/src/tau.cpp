#include "splitlab/tau.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace splitlab {

namespace {
std::mutex g_tau_mutex;
std::deque<Polynomial> g_tau_cache;  // deque: published entries keep stable addresses
}

const Polynomial& tau(unsigned n) {
    std::lock_guard<std::mutex> lock(g_tau_mutex);
    if (g_tau_cache.empty()) {
        g_tau_cache.push_back(Polynomial::constant(1));
        g_tau_cache.push_back(Polynomial::variable());
    }
    while (g_tau_cache.size() <= n) {
        const unsigned m = static_cast<unsigned>(g_tau_cache.size()) - 1;
        g_tau_cache.push_back(g_tau_cache[m].apply_D() * frac(1, m));
    }
    return g_tau_cache[n];
}

const Rational& TauExpansion::coeff(unsigned k) const {
    static const Rational kZero{};
    return k < coeffs.size() ? coeffs[k] : kZero;
}

TauExpansion to_tau(const Polynomial& p) {
    TauExpansion e;
    if (p.is_zero()) return e;
    const unsigned deg = static_cast<unsigned>(p.degree());
    e.coeffs.assign(deg + 1, Rational(0));
    Polynomial rem = p;
    for (unsigned k = deg + 1; k-- > 0;) {
        if (rem.is_zero()) break;
        if (rem.degree() < static_cast<int>(k)) continue;
        const Polynomial& t = tau(k);
        Rational c = rem.coeff(k) / t.coeff(k);  // deg tau_k = k exactly
        if (c != 0) {
            e.coeffs[k] = c;
            rem = rem - t * c;
        }
    }
    if (!rem.is_zero()) throw std::logic_error("to_tau: triangular solve left a remainder");
    return e;
}

Polynomial from_tau(const TauExpansion& e) {
    Polynomial p;
    for (unsigned k = 0; k < e.coeffs.size(); ++k)
        if (e.coeffs[k] != 0) p = p + tau(k) * e.coeffs[k];
    return p;
}

Real norm(const Polynomial& p, unsigned n, unsigned bits) {
    if (p.degree() > static_cast<int>(n))
        throw std::invalid_argument("norm: polynomial degree exceeds norm index");
    PrecisionGuard guard(bits);
    TauExpansion e = to_tau(p);
    Real half_pi = pi_value() / 2;
    Real acc = 0;
    for (unsigned i = 0; i < e.coeffs.size(); ++i) {
        if (e.coeffs[i] == 0) continue;
        acc += abs(Real(e.coeffs[i])) * pow(half_pi, static_cast<int>(n - i));
    }
    return acc;
}

namespace detail {
void corrupt_tau_cache_for_selftest() {
    tau(5);
    std::lock_guard<std::mutex> lock(g_tau_mutex);
    Polynomial bad = g_tau_cache[5] + Polynomial::constant(frac(1, 7));
    g_tau_cache[5] = bad;
}
}  // namespace detail

}  // namespace splitlab
