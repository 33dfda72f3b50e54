#include "equitest/critical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "equitest/distfn.hpp"
#include "equitest/rootfind.hpp"

namespace equitest {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

}  // namespace

EquivalenceSpec::EquivalenceSpec(double alpha_, double delta_, double sigma_)
    : alpha(alpha_), delta(delta_), sigma(sigma_) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    require_positive(delta, "delta");
    require_positive(sigma, "sigma");
}

double coverage_level(double c, double delta, double sigma) {
    require_positive(delta, "delta");
    require_positive(sigma, "sigma");
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::domain_error("critical constant must be >= 0 and finite");
    return norm_cdf((c - delta) / sigma) - norm_cdf((-c - delta) / sigma);
}

CriticalConstant critical_constant(const EquivalenceSpec& spec) {
    const double alpha = spec.alpha, delta = spec.delta, sigma = spec.sigma;
    const double z_hi = norm_quantile(1.0 - 0.5 * alpha);
    const double z_lo = norm_quantile(1.0 - alpha);

    auto h = [&](double c) { return coverage_level(c, delta, sigma); };
    auto dh = [&](double c) {
        return (norm_pdf((c - delta) / sigma) + norm_pdf((c + delta) / sigma)) / sigma;
    };

    // h is strictly increasing with h(0) = 0 and h(inf) = 1; the lower end of
    // the bracket sits just under the strict bound delta - sigma * z_{1-alpha}.
    // The margin there is only alpha - h = Phi(z_{1-alpha} - 2*delta/sigma),
    // which rounding noise can swallow, so nudge down and fall back to 0
    // (h(0) is exactly 0) if needed.
    double lo = std::max(0.0, delta - sigma * z_lo - 1e-9 * (1.0 + delta + sigma));
    if (lo > 0.0 && h(lo) > alpha) lo = 0.0;
    double hi = delta + sigma * z_hi + 10.0 * sigma;
    while (h(hi) < alpha) hi += 10.0 * sigma;
    const RootResult root = solve_increasing(h, dh, alpha, lo, hi, 1e-15, 300);
    double c = root.x;
    // The root provably exceeds delta - sigma * z_{1-alpha}, but at large
    // delta/sigma the true gap is sub-ulp; keep the returned value on the
    // correct side of the bound.
    const double bound = delta - sigma * z_lo;
    if (c <= bound) c = std::nextafter(bound, hi);
    return CriticalConstant{c, spec, std::fabs(h(c) - alpha)};
}

double exact_power(double delta_prime, const EquivalenceSpec& spec) {
    if (!(delta_prime >= 0.0) || !std::isfinite(delta_prime))
        throw std::domain_error("delta_prime must be >= 0 and finite");
    const double c = critical_constant(spec).c;
    return norm_cdf((c - delta_prime) / spec.sigma) -
           norm_cdf((-c - delta_prime) / spec.sigma);
}

double p_value(double t_abs, double delta, double sigma) {
    if (!(t_abs >= 0.0) || !std::isfinite(t_abs))
        throw std::domain_error("test statistic magnitude must be >= 0 and finite");
    return coverage_level(t_abs, delta, sigma);
}

double least_favorable_weight(double m, double delta, double sigma, double alpha) {
    require_positive(delta, "delta");
    require_positive(sigma, "sigma");
    if (!(std::fabs(m) < delta))
        throw std::domain_error("alternative m must satisfy |m| < delta");

    const double c = critical_constant(EquivalenceSpec(alpha, delta, sigma)).c;
    const double s2 = sigma * sigma;
    const double u = (delta + m) * c / s2;
    const double v = (delta - m) * c / s2;
    // p/(1-p) = sinh(u)/sinh(v), evaluated through logs so large exponents
    // cannot overflow: log r = (u - v) + log(1 - e^{-2u}) - log(1 - e^{-2v}).
    const double log_r =
        (u - v) + std::log(-std::expm1(-2.0 * u)) - std::log(-std::expm1(-2.0 * v));
    return 1.0 / (1.0 + std::exp(-log_r));
}

double lf_ratio(double x, double m, double delta, double sigma, double p) {
    require_positive(delta, "delta");
    require_positive(sigma, "sigma");
    if (!(std::fabs(m) < delta))
        throw std::domain_error("alternative m must satisfy |m| < delta");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("weight p must lie in (0, 1)");
    const double s2 = sigma * sigma;
    return p * std::exp((delta - m) * x / s2) + (1.0 - p) * std::exp(-(delta + m) * x / s2);
}

double tost_limit_power(double h, double alpha, double delta, double sigma) {
    EquivalenceSpec check(alpha, delta, sigma);  // validates the arguments
    (void)check;
    if (!std::isfinite(h)) throw std::domain_error("shift h must be finite");
    const double z = norm_quantile(1.0 - alpha);
    const double upper = delta / sigma - z - h / sigma;
    const double lower = -delta / sigma + z - h / sigma;
    if (upper <= lower) return 0.0;  // empty rejection interval in the limit
    return norm_cdf(upper) - norm_cdf(lower);
}

double onesided_local_power(double h, double alpha, double sigma) {
    require_positive(sigma, "sigma");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    if (!(h >= 0.0) || !std::isfinite(h))
        throw std::domain_error("shift h must be >= 0 and finite");
    return norm_cdf(h / sigma - norm_quantile(1.0 - alpha));
}

}  // namespace equitest
