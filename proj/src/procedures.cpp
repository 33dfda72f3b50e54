#include "equitest/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "equitest/distfn.hpp"
#include "equitest/errors.hpp"

namespace equitest {

namespace {

double sample_mean(std::span<const double> data) {
    double s = 0.0;
    for (double x : data) s += x;
    return s / static_cast<double>(data.size());
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::UmpKnownSigma: return "ump_known_sigma";
        case Method::UmpLinearGaussian: return "ump_linear_gaussian";
        case Method::Tost: return "tost";
        case Method::Plugin: return "plugin";
    }
    return "unknown";
}

TestDecision ump_known_sigma(std::span<const double> data, double sigma, double alpha,
                             double margin) {
    if (data.empty()) throw std::domain_error("ump_known_sigma needs data");
    const double root_n = std::sqrt(static_cast<double>(data.size()));
    const EquivalenceSpec spec(alpha, root_n * margin, sigma);
    const CriticalConstant crit = critical_constant(spec);

    TestDecision d{Method::UmpKnownSigma, data.size(), 0, 0, 0, sigma, false, spec, ""};
    d.statistic = root_n * std::fabs(sample_mean(data));
    d.critical_value = crit.c;
    d.p_value = p_value(d.statistic, spec.delta, spec.sigma);
    d.reject = d.statistic <= d.critical_value;
    return d;
}

TestDecision ump_linear_gaussian(std::span<const double> x, std::span<const double> a,
                                 const Matrix& sigma, double alpha, double delta) {
    const std::size_t k = x.size();
    if (k == 0 || a.size() != k || sigma.rows() != k || sigma.cols() != k)
        throw std::domain_error("ump_linear_gaussian dimension mismatch");
    if (!sigma.is_symmetric(1e-9))
        throw std::domain_error("covariance matrix must be symmetric");
    const double var = quadratic_form(a, sigma);
    if (!(var > 0.0)) throw std::domain_error("a' Sigma a must be positive");

    const double sd = std::sqrt(var);
    const EquivalenceSpec spec(alpha, delta, sd);
    const CriticalConstant crit = critical_constant(spec);

    TestDecision d{Method::UmpLinearGaussian, 1, 0, 0, 0, sd, false, spec, ""};
    d.statistic = std::fabs(
        std::inner_product(a.begin(), a.end(), x.begin(), 0.0));
    d.critical_value = crit.c;
    d.p_value = p_value(d.statistic, spec.delta, spec.sigma);
    d.reject = d.statistic <= d.critical_value;
    return d;
}

TestDecision tost(std::span<const double> data, double alpha, double margin) {
    const std::size_t n = data.size();
    if (n < 2) throw std::domain_error("tost needs at least 2 observations");
    if (!(margin > 0.0) || !std::isfinite(margin))
        throw std::domain_error("margin must be positive and finite");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");

    const double mean = sample_mean(data);
    double ss = 0.0;
    for (double x : data) ss += (x - mean) * (x - mean);
    if (!(ss > 0.0)) throw DegenerateDataError("tost undefined: zero sample variance");
    const double s = std::sqrt(ss / static_cast<double>(n - 1));  // unbiased divisor

    const double root_n = std::sqrt(static_cast<double>(n));
    const double t_crit = t_quantile(1.0 - alpha, static_cast<int>(n) - 1);

    TestDecision d{Method::Tost, n, 0, 0, 0, s, false, EquivalenceSpec(alpha, margin, s), ""};
    d.statistic = std::fabs(mean);
    d.critical_value = margin - s * t_crit / root_n;  // may be negative: never rejects
    d.reject = d.statistic <= d.critical_value;

    // Larger of the two one-sided t-test p-values.
    const int df = static_cast<int>(n) - 1;
    const double t_low = root_n * (mean + margin) / s;   // tests mu <= -margin
    const double t_high = root_n * (mean - margin) / s;  // tests mu >= margin
    d.p_value = std::max(1.0 - t_cdf(t_low, df), t_cdf(t_high, df));
    if (d.critical_value < 0.0)
        d.diagnostics = "margin too small for this sample spread: test never rejects";
    return d;
}

TestDecision plugin_test(const Model& model, const FunctionalG& g, const DataSet& data,
                         double alpha, double delta,
                         std::optional<double> sigma_hat_override) {
    const MleResult fit = model.mle(data);
    double sigma_hat;
    std::string note = fit.note;
    if (sigma_hat_override) {
        sigma_hat = *sigma_hat_override;
        if (!(sigma_hat > 0.0) || !std::isfinite(sigma_hat))
            throw std::domain_error("sigma_hat override must be positive and finite");
        if (!note.empty()) note += "; ";
        note += "user-supplied sigma_hat";
    } else {
        sigma_hat = functional_sd(model, g, fit.theta);
    }

    const double root_n = std::sqrt(static_cast<double>(data.size()));
    const EquivalenceSpec spec(alpha, delta, sigma_hat);
    const CriticalConstant crit = critical_constant(spec);

    TestDecision d{Method::Plugin, data.size(), 0, 0, 0, sigma_hat, false, spec, note};
    d.statistic = root_n * std::fabs(g.value(fit.theta));
    d.critical_value = crit.c;
    d.p_value = p_value(d.statistic, spec.delta, spec.sigma);
    d.reject = d.statistic <= d.critical_value;
    return d;
}

double asymptotic_power_bound(double delta_prime, const Model& model, const FunctionalG& g,
                              const Theta& theta0, double alpha, double delta) {
    if (!(delta_prime >= 0.0) || !std::isfinite(delta_prime))
        throw std::domain_error("delta_prime must be >= 0 and finite");
    model.validate(theta0);
    const double g0 = g.value(theta0);
    if (std::fabs(g0) > 1e-9) {
        std::ostringstream msg;
        msg << "asymptotic_power_bound requires g(theta0) = 0, got " << g0;
        throw std::domain_error(msg.str());
    }
    const double sd = functional_sd(model, g, theta0);
    return exact_power(delta_prime, EquivalenceSpec(alpha, delta, sd));
}

}  // namespace equitest
