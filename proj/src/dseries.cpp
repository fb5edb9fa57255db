#include "splitlab/dseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitlab {

DSeries::DSeries(unsigned order, std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
}

bool DSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

int DSeries::lowest_order() const {
    for (unsigned n = 0; n < coeffs_.size(); ++n)
        if (!coeffs_[n].is_zero()) return static_cast<int>(n);
    return -1;
}

bool DSeries::even_in_d() const {
    for (unsigned n = 1; n < coeffs_.size(); n += 2)
        if (!coeffs_[n].is_zero()) return false;
    return true;
}

bool DSeries::odd_in_d() const {
    for (unsigned n = 0; n < coeffs_.size(); n += 2)
        if (!coeffs_[n].is_zero()) return false;
    return true;
}

bool DSeries::coeffs_odd_in_u() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Polynomial& p) { return p.is_odd_in_u(); });
}

bool DSeries::coeffs_even_in_u() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Polynomial& p) { return p.is_even_in_u(); });
}

bool DSeries::degree_within_index() const {
    for (unsigned n = 0; n < coeffs_.size(); ++n)
        if (coeffs_[n].degree() > static_cast<int>(n)) return false;
    return true;
}

DSeries DSeries::truncated(unsigned new_order) const {
    DSeries r(new_order);
    for (unsigned n = 0; n <= std::min(new_order, order()); ++n) r.set(n, coeffs_[n]);
    return r;
}

DSeries DSeries::shift_up(unsigned k) const {
    DSeries r(order());
    for (unsigned n = k; n <= order(); ++n) r.set(n, coeffs_[n - k]);
    return r;
}

DSeries DSeries::shift_down(unsigned k) const {
    for (unsigned n = 0; n < k && n <= order(); ++n)
        if (!coeffs_[n].is_zero())
            throw std::domain_error("shift_down: nonzero low-order coefficient");
    if (order() < k) return DSeries(0);
    DSeries r(order() - k);
    for (unsigned n = 0; n <= r.order(); ++n) r.set(n, coeffs_[n + k]);
    return r;
}

DSeries add(const DSeries& a, const DSeries& b) {
    const unsigned ord = std::min(a.order(), b.order());
    DSeries r(ord);
    for (unsigned n = 0; n <= ord; ++n) r.set(n, a[n] + b[n]);
    return r;
}

DSeries sub(const DSeries& a, const DSeries& b) {
    const unsigned ord = std::min(a.order(), b.order());
    DSeries r(ord);
    for (unsigned n = 0; n <= ord; ++n) r.set(n, a[n] - b[n]);
    return r;
}

DSeries mul_serial(const DSeries& a, const DSeries& b) {
    const unsigned ord = std::min(a.order(), b.order());
    DSeries r(ord);
    for (unsigned n = 0; n <= ord; ++n) {
        Polynomial acc;
        for (unsigned i = 0; i <= n; ++i) {
            if (a[i].is_zero() || b[n - i].is_zero()) continue;
            acc = acc + a[i] * b[n - i];
        }
        r.set(n, std::move(acc));
    }
    return r;
}

DSeries mul(const DSeries& a, const DSeries& b) {
    const unsigned ord = std::min(a.order(), b.order());
    DSeries r(ord);
#pragma omp parallel for schedule(dynamic)
    for (unsigned n = 0; n <= ord; ++n) {
        Polynomial acc;
        for (unsigned i = 0; i <= n; ++i) {
            if (a[i].is_zero() || b[n - i].is_zero()) continue;
            acc = acc + a[i] * b[n - i];
        }
        r.set(n, std::move(acc));
    }
    return r;
}

DSeries mul_poly(const DSeries& a, const Polynomial& p) {
    DSeries r(a.order());
    for (unsigned n = 0; n <= a.order(); ++n) r.set(n, a[n] * p);
    return r;
}

DSeries mul_scalar(const DSeries& a, const Rational& c) {
    DSeries r(a.order());
    for (unsigned n = 0; n <= a.order(); ++n) r.set(n, a[n] * c);
    return r;
}

DSeries div_unit(const DSeries& a, const DSeries& b) {
    if (b[0].is_zero() || b[0].degree() != 0)
        throw std::domain_error("div_unit: divisor's d^0 coefficient must be a nonzero constant");
    const Rational c = b[0].coeff(0);
    const unsigned ord = std::min(a.order(), b.order());
    DSeries q(ord);
    for (unsigned n = 0; n <= ord; ++n) {
        Polynomial acc = a[n];
        for (unsigned k = 1; k <= n; ++k) {
            if (b[k].is_zero() || q[n - k].is_zero()) continue;
            acc = acc - b[k] * q[n - k];
        }
        q.set(n, acc * (Rational(1) / c));
    }
    return q;
}

namespace {

std::vector<Rational> half_kernel(unsigned order, unsigned parity) {
    std::vector<Rational> f(order + 1);
    Integer pow2 = 1, fact = 1;
    for (unsigned i = 0; i <= order; ++i) {
        if (i > 0) { pow2 *= 2; fact *= i; }
        if (i % 2 == parity) f[i] = frac(Integer(1), pow2 * fact);
    }
    return f;
}

std::vector<Rational> full_kernel(unsigned order, unsigned parity, int sign_all) {
    std::vector<Rational> f(order + 1);
    Integer fact = 1;
    int s = 1;
    for (unsigned i = 0; i <= order; ++i) {
        if (i > 0) { fact *= i; s *= sign_all; }
        if (parity == 2 || i % 2 == parity) f[i] = frac(Integer(s), fact);
    }
    return f;
}

}  // namespace

OperatorKernel OperatorKernel::exp_dD(unsigned order, int sign) {
    return {full_kernel(order, 2, sign)};
}
OperatorKernel OperatorKernel::cosh_half(unsigned order) { return {half_kernel(order, 0)}; }
OperatorKernel OperatorKernel::sinh_half(unsigned order) { return {half_kernel(order, 1)}; }
OperatorKernel OperatorKernel::cosh_full(unsigned order) { return {full_kernel(order, 0, 1)}; }
OperatorKernel OperatorKernel::sinh_full(unsigned order) { return {full_kernel(order, 1, 1)}; }

OperatorKernel OperatorKernel::sinc_half(unsigned order) {
    // sinh(z/2)/z: coefficient of z^(2k) is 1 / (2^(2k+1) (2k+1)!)
    std::vector<Rational> f(order + 1);
    for (unsigned i = 0; i <= order; i += 2)
        f[i] = frac(Integer(1), Integer(1) << (i + 1))
               / Rational(factorial(i + 1));
    return {std::move(f)};
}

OperatorKernel OperatorKernel::inversion_remainder(unsigned order) {
    // (z - 2 sinh(z/2))/z^2 = -sum_{k>=1} z^(2k-1) / (4^k (2k+1)!)
    std::vector<Rational> f(order + 1);
    for (unsigned i = 1; i <= order; i += 2) {
        const unsigned k = (i + 1) / 2;
        f[i] = -frac(Integer(1), Integer(1) << (2 * k)) / Rational(factorial(2 * k + 1));
    }
    return {std::move(f)};
}

namespace {

// D-power table: table[j][i] = D^i q_j, built up to what index j+i <= order needs.
std::vector<std::vector<Polynomial>> d_power_table(const DSeries& q) {
    const unsigned ord = q.order();
    std::vector<std::vector<Polynomial>> table(ord + 1);
#pragma omp parallel for schedule(dynamic)
    for (unsigned j = 0; j <= ord; ++j) {
        if (q[j].is_zero()) continue;
        auto& row = table[j];
        row.reserve(ord - j + 1);
        row.push_back(q[j]);
        for (unsigned i = 1; i <= ord - j; ++i) {
            Polynomial next = row.back().apply_D();
            if (next.is_zero()) break;
            row.push_back(std::move(next));
        }
    }
    return table;
}

DSeries combine_table(const OperatorKernel& k, const std::vector<std::vector<Polynomial>>& table,
                      unsigned ord, bool parallel) {
    DSeries r(ord);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (unsigned n = 0; n <= ord; ++n) {
        Polynomial acc;
        for (unsigned i = 0; i <= n && i < k.taylor.size(); ++i) {
            if (k.taylor[i] == 0) continue;
            const auto& row = table[n - i];
            if (i < row.size()) acc = acc + row[i] * k.taylor[i];
        }
        r.set(n, std::move(acc));
    }
    return r;
}

}  // namespace

DSeries apply_f_of_dD_serial(const OperatorKernel& k, const DSeries& q) {
    const unsigned ord = q.order();
    std::vector<std::vector<Polynomial>> table(ord + 1);
    for (unsigned j = 0; j <= ord; ++j) {
        if (q[j].is_zero()) continue;
        auto& row = table[j];
        row.push_back(q[j]);
        for (unsigned i = 1; i <= ord - j; ++i) {
            Polynomial next = row.back().apply_D();
            if (next.is_zero()) break;
            row.push_back(std::move(next));
        }
    }
    return combine_table(k, table, ord, /*parallel=*/false);
}

DSeries apply_f_of_dD(const OperatorKernel& k, const DSeries& q) {
    auto table = d_power_table(q);
    return combine_table(k, table, q.order(), /*parallel=*/true);
}

DSeries op_C(const DSeries& q) { return apply_f_of_dD(OperatorKernel::cosh_half(q.order()), q); }
DSeries op_S(const DSeries& q) { return apply_f_of_dD(OperatorKernel::sinh_half(q.order()), q); }
DSeries op_C1(const DSeries& q) { return apply_f_of_dD(OperatorKernel::cosh_full(q.order()), q); }
DSeries op_S1(const DSeries& q) { return apply_f_of_dD(OperatorKernel::sinh_full(q.order()), q); }

}  // namespace splitlab
