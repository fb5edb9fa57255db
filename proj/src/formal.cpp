#include "splitlab/formal.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace splitlab {

namespace {

void check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

const Polynomial& one_minus_u2() {
    static const Polynomial p({Rational(1), Rational(0), Rational(-1)});
    return p;
}

}  // namespace

DSeries eps_squared_series(unsigned order) {
    DSeries s(order);
    for (unsigned n = 2; n <= order; n += 2)
        s.set(n, Polynomial::constant(frac(Integer(2), factorial(n))));
    return s;
}

namespace {
std::mutex g_ipoly_mutex;
std::deque<Polynomial> g_ipoly_cache;   // g_ipoly_cache[n-1] = I_{2n-1}
std::deque<Polynomial> g_e_iterates;    // E^k(-2), E(P) = (1-u^2)P' - uP
}

const Polynomial& I_poly(unsigned n) {
    if (n == 0) throw std::invalid_argument("I_poly: index starts at 1");
    std::lock_guard<std::mutex> lock(g_ipoly_mutex);
    if (g_e_iterates.empty()) g_e_iterates.push_back(Polynomial::constant(-2));
    while (g_ipoly_cache.size() < n) {
        const unsigned m = static_cast<unsigned>(g_ipoly_cache.size()) + 1;
        while (g_e_iterates.size() < 2 * m) {
            const Polynomial& prev = g_e_iterates.back();
            g_e_iterates.push_back(prev.apply_D() - Polynomial::variable() * prev);
        }
        g_ipoly_cache.push_back(g_e_iterates[2 * m - 1] * frac(Integer(2), factorial(2 * m)));
    }
    return g_ipoly_cache[n - 1];
}

DSeries I_poly_series(unsigned order) {
    DSeries s(order);
    for (unsigned n = 1; 2 * n <= order; ++n) s.set(2 * n, I_poly(n));
    return s;
}

TrigPair trig_compose(const DSeries& a) {
    const unsigned ord = a.order();
    if (!a[0].is_zero() || (ord >= 1 && !a[1].is_zero()))
        throw std::domain_error("trig_compose: series must start at d^2");
    DSeries zz = mul_poly(mul(a, a), one_minus_u2());  // (1-u^2) A^2, starts at d^4
    DSeries cosw(ord), odd_sum(ord);
    cosw.set(0, Polynomial::constant(1));
    odd_sum.set(0, Polynomial::constant(1));
    DSeries power = cosw;  // ZZ^0
    for (unsigned k = 1; 4 * k <= ord; ++k) {
        power = mul(power, zz);
        if (power.is_zero()) break;
        const Rational sgn = (k % 2 == 0) ? Rational(1) : Rational(-1);
        cosw = add(cosw, mul_scalar(power, sgn / Rational(factorial(2 * k))));
        odd_sum = add(odd_sum, mul_scalar(power, sgn / Rational(factorial(2 * k + 1))));
    }
    return {cosw, mul(a, odd_sum)};
}

DSeries residual(const DSeries& z, unsigned order) {
    const DSeries zt = z.truncated(order);
    // denominators cosh(d) +- u sinh(d), inverted as unit series
    DSeries den_plus(order), den_minus(order);
    for (unsigned n = 0; n <= order; ++n) {
        const Rational c = frac(Integer(1), factorial(n));
        if (n % 2 == 0) {
            den_plus.set(n, Polynomial::constant(c));
            den_minus.set(n, Polynomial::constant(c));
        } else {
            den_plus.set(n, Polynomial::monomial(1, c));
            den_minus.set(n, Polynomial::monomial(1, -c));
        }
    }
    DSeries one(order);
    one.set(0, Polynomial::constant(1));
    const DSeries inv_plus = div_unit(one, den_plus);
    const DSeries inv_minus = div_unit(one, den_minus);

    const DSeries z_fwd = apply_f_of_dD(OperatorKernel::exp_dD(order, +1), zt);
    const DSeries z_bwd = apply_f_of_dD(OperatorKernel::exp_dD(order, -1), zt);

    DSeries lhs = add(mul(z_fwd, inv_plus), mul(z_bwd, inv_minus));
    lhs = sub(lhs, mul_scalar(zt, Rational(2)));

    TrigPair tp = trig_compose(zt);
    const Polynomial two_u({Rational(0), Rational(2)});
    const Polynomial two_u2_minus_1({Rational(-1), Rational(0), Rational(2)});
    DSeries f = add(mul_poly(tp.cos_w, two_u), mul_poly(tp.sinc_w, two_u2_minus_1));
    f = mul(eps_squared_series(order), f);
    f = sub(f, I_poly_series(order));

    return sub(lhs, f);
}

Polynomial solve_step(const Polynomial& r) {
    if (r.is_zero()) return Polynomial();
    check(r.is_odd_in_u(), "solve_step: residual coefficient is not odd in u");
    check(r.eval(Rational(1)) == 0, "solve_step: residual coefficient does not vanish at u = 1");
    const Polynomial inner = r.integral_from(Rational(1));
    const Polynomial quot = inner.exact_div(one_minus_u2() * one_minus_u2());
    Polynomial a = -quot.integral_from(Rational(0));
    check(a.is_odd_in_u(), "solve_step: solution not odd in u");
    check(a.coeff(0) == 0, "solve_step: solution does not vanish at u = 0");
    check(a.degree() <= (r.degree() >= 2 ? r.degree() - 2 : 0), "solve_step: degree bound violated");
    return a;
}

FormalSolution formal_solution(unsigned order) {
    if (order % 2 != 0 || order < 4)
        throw std::invalid_argument("formal_solution: order must be even and >= 4");
    FormalSolution sol;
    sol.a = DSeries(order);
    for (unsigned n = 0; 2 * n + 2 <= order; ++n) {
        const unsigned res_order = 2 * n + 4;
        const DSeries r = residual(sol.a, res_order);
        for (unsigned k = 0; k < res_order; ++k) {
            if (!r[k].is_zero()) {
                std::ostringstream os;
                os << "formal_solution: residual has unexpected d^" << k
                   << " coefficient " << r[k];
                throw std::logic_error(os.str());
            }
        }
        const Polynomial& low = r[res_order];
        check(low.degree() <= static_cast<int>(2 * n + 3),
              "formal_solution: residual coefficient degree bound violated");
        Polynomial a_next = solve_step(low);
        sol.a.set(2 * n + 2, a_next);
        sol.odd_polys.push_back(std::move(a_next));
    }
    return sol;
}

PrefactorSeries prefactor_series(unsigned order) {
    PrefactorSeries pc{DSeries(order), DSeries(order), DSeries(order), DSeries(order)};

    auto P = [](std::vector<Rational> v) { return Polynomial(std::move(v)); };

    if (order >= 2) pc.u_init.set(2, P({frac(0, 1), frac(-1, 4)}));
    if (order >= 4) pc.u_init.set(4, P({frac(0, 1), frac(-47, 576), frac(0, 1), frac(91, 864)}));
    if (order >= 6)
        pc.u_init.set(6, P({frac(0, 1), frac(-3703, 69120), frac(0, 1), frac(185, 1152),
                            frac(0, 1), frac(-319, 2880)}));

    pc.q.set(0, Polynomial::constant(1));
    if (order >= 2) pc.q.set(2, P({frac(1, 4), frac(0, 1), frac(-1, 4)}));
    if (order >= 4)
        pc.q.set(4, P({frac(13, 216), frac(0, 1), frac(-13, 48), frac(0, 1), frac(91, 432)}));
    if (order >= 6)
        pc.q.set(6, P({frac(287, 8640), frac(0, 1), frac(-937, 2880), frac(0, 1),
                       frac(1079, 1728), frac(0, 1), frac(-319, 960)}));

    if (order >= 2) pc.q1.set(2, P({frac(-1, 1), frac(0, 1), frac(1, 1)}));
    if (order >= 4)
        pc.q1.set(4, P({frac(1, 4), frac(0, 1), frac(0, 1), frac(0, 1), frac(-1, 4)}));
    if (order >= 6)
        pc.q1.set(6, one_minus_u2() * P({frac(1, 1), frac(0, 1), frac(1, 1), frac(0, 1),
                                         frac(4, 9)}) * frac(-5, 48));
    if (order >= 8)
        pc.q1.set(8, one_minus_u2() * P({frac(0, 1), frac(0, 1), frac(-997, 4320), frac(0, 1),
                                         frac(185, 432), frac(0, 1), frac(-367, 2160)}));

    pc.v1.set(0, Polynomial::constant(1));
    if (order >= 2) pc.v1.set(2, P({frac(1, 1), frac(0, 1), frac(-1, 1)}));
    if (order >= 4)
        pc.v1.set(4, P({frac(107, 432), frac(0, 1), frac(-1, 12), frac(0, 1), frac(-71, 432)}));
    if (order >= 6)
        pc.v1.set(6, P({frac(-11, 108), frac(0, 1), frac(49, 60), frac(0, 1), frac(-193, 144),
                        frac(0, 1), frac(1351, 2160)}));
    return pc;
}

JPipeline compute_j_pipeline(const FormalSolution& sol) {
    if (sol.order() < 14)
        throw std::invalid_argument("compute_J: solution order must be >= 14");
    const PrefactorSeries pc = prefactor_series(sol.order());
    JPipeline out;
    out.f = sub(sol.a, pc.u_init);
    check(out.f.lowest_order() >= 8, "compute_J: F must start at d^8");
    out.g = div_unit(out.f, pc.q);
    check(out.g.lowest_order() == 8, "compute_J: G must start at d^8");
    out.j = mul(pc.q1, op_S(out.g));
    check(out.j.lowest_order() == 11, "compute_J: J must start at d^11");
    check(out.j.coeffs_even_in_u(), "compute_J: J coefficients must be even in u");
    check(out.j.odd_in_d(), "compute_J: J must be odd in d");
    for (unsigned n = 0; n <= out.j.order(); ++n)
        check(out.j[n].degree() <= static_cast<int>(n) - 1,
              "compute_J: deg(J_n) <= n-1 violated");
    return out;
}

DSeries compute_J(const FormalSolution& sol) { return compute_j_pipeline(sol).j; }

}  // namespace splitlab
