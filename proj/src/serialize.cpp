#include "splitlab/serialize.hpp"

#include <sstream>

namespace splitlab {

namespace {

std::string real_str(const Real& x, unsigned bits) {
    return format_real(x, digits10_for_bits(bits));
}

}  // namespace

nlohmann::json polynomial_to_json(const Polynomial& p) {
    nlohmann::json obj = nlohmann::json::object();
    for (int k = 0; k <= p.degree(); ++k) {
        const Rational& c = p.coeff(static_cast<unsigned>(k));
        if (c == 0) continue;
        obj[std::to_string(k)] = {boost::multiprecision::numerator(c).str(),
                                  boost::multiprecision::denominator(c).str()};
    }
    return obj;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
    std::vector<Rational> coeffs;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const unsigned k = static_cast<unsigned>(std::stoul(it.key()));
        if (coeffs.size() <= k) coeffs.resize(k + 1);
        const Integer num(it.value()[0].get<std::string>());
        const Integer den(it.value()[1].get<std::string>());
        coeffs[k] = frac(num, den);
    }
    return Polynomial(std::move(coeffs));
}

nlohmann::json series_document(const FormalSolution& sol, const ConstantEstimates* constants) {
    nlohmann::json doc;
    doc["format"] = kSeriesFormat;
    doc["order"] = sol.order();
    nlohmann::json coeffs = nlohmann::json::object();
    for (unsigned n = 0; n <= sol.order(); ++n)
        if (!sol.a[n].is_zero()) coeffs[std::to_string(n)] = polynomial_to_json(sol.a[n]);
    doc["coefficients"] = std::move(coeffs);
    if (constants) {
        const unsigned bits = constants->precision_bits;
        nlohmann::json c;
        c["precision_bits"] = bits;
        auto seq = [&](const std::vector<IndexedValue>& v) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& iv : v)
                arr.push_back({{"n", iv.n}, {"value", real_str(iv.value, bits)}});
            return arr;
        };
        c["alpha_seq"] = seq(constants->alpha_seq);
        c["beta_seq"] = seq(constants->beta_seq);
        c["gamma_seq"] = seq(constants->gamma_seq);
        c["alpha"] = real_str(constants->alpha, bits);
        c["alpha_error"] = real_str(constants->alpha_err, bits);
        c["beta"] = real_str(constants->beta, bits);
        c["beta_error"] = real_str(constants->beta_err, bits);
        c["gamma"] = real_str(constants->gamma, bits);
        c["gamma_error"] = real_str(constants->gamma_err, bits);
        doc["constants"] = std::move(c);
    }
    return doc;
}

nlohmann::json report_document(const SplittingReport& rep) {
    const unsigned bits = rep.precision_bits;
    nlohmann::json doc;
    doc["format"] = kReportFormat;
    doc["precision_bits"] = bits;
    doc["epsilon"] = real_str(rep.epsilon, bits);
    doc["d"] = real_str(rep.d, bits);
    nlohmann::json t = nlohmann::json::array(), delta = nlohmann::json::array(),
                   over_cosh = nlohmann::json::array();
    for (const auto& s : rep.samples) {
        t.push_back(real_str(s.t, bits));
        delta.push_back(real_str(s.delta, bits));
        over_cosh.push_back(real_str(s.delta_over_cosh, bits));
    }
    doc["samples"] = {{"t", std::move(t)},
                      {"delta", std::move(delta)},
                      {"delta_over_cosh", std::move(over_cosh)}};
    doc["fit"] = {{"amplitude", real_str(rep.amplitude, bits)},
                  {"phase", real_str(rep.phase, bits)},
                  {"residual_rel", real_str(rep.fit_residual_rel, bits)},
                  {"degraded", rep.degraded_fit}};
    doc["implied_alpha"] = {{"exp_pi2_over_eps", real_str(rep.implied_alpha_eps, bits)},
                            {"exp_pi2_over_d", real_str(rep.implied_alpha_d, bits)}};
    doc["zero_spacing"] = real_str(rep.zero_spacing, bits);
    doc["crossing_q_near_pi"] = real_str(rep.crossing_q_near_pi, bits);
    return doc;
}

std::string report_csv(const SplittingReport& rep) {
    const unsigned bits = rep.precision_bits;
    const Real w = 2 * pi_value() / rep.epsilon;
    const Real a_comp = rep.amplitude * cos(rep.phase);
    const Real b_comp = rep.amplitude * sin(rep.phase);
    std::ostringstream os;
    os << "t,delta,delta_over_cosh,fit_residual\n";
    for (const auto& s : rep.samples) {
        const Real fit = a_comp * sin(w * s.t) + b_comp * cos(w * s.t);
        os << real_str(s.t, bits) << ',' << real_str(s.delta, bits) << ','
           << real_str(s.delta_over_cosh, bits) << ','
           << real_str(s.delta_over_cosh - fit, bits) << '\n';
    }
    return os.str();
}

std::string dump_deterministic(const nlohmann::json& j) {
    // nlohmann objects keep keys sorted; all floats were rendered as strings
    return j.dump(2) + "\n";
}

}  // namespace splitlab
