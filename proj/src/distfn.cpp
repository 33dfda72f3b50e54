#include "equitest/distfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "equitest/rootfind.hpp"

namespace equitest {

namespace {

constexpr long double kInvSqrt2L = 0.70710678118654752440084436210484904L;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::domain_error(std::string(what) + " must be finite");
}

void require_df(int df) {
    if (df < 1) throw std::domain_error("degrees of freedom must be >= 1");
}

// ALGORITHM AS241 (Wichura 1988), PPND16: normal quantile accurate to about
// 1 part in 1e16. Used as the initial guess; a Newton step against norm_cdf
// then ties the result to the CDF actually shipped.
double as241(double u) {
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double ret;
    if (r <= 5.0) {
        r -= 1.6;
        ret = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        ret = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -ret : ret;
}

// Modified Lentz evaluation of the textbook continued fraction for the
// regularized incomplete beta function (Numerical Recipes 6.4).
double beta_continued_fraction(double x, double a, double b) {
    const double tiny = 1e-300;
    const double eps = 1e-16;
    const int max_terms = 500;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;

    for (int m = 1; m <= max_terms; ++m) {
        const double m2 = 2.0 * m;
        // even step
        double numer = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        result *= d * c;
        // odd step
        numer = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double mult = d * c;
        result *= mult;
        if (std::fabs(mult - 1.0) < eps) return result;
    }
    return result;  // converges to working precision well before max_terms
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    require_finite(x, "norm_cdf argument");
    // The argument product and erfc run in long double: rounding x/sqrt(2)
    // to double alone would already cost ~2*x^2 ulps in the tails.
    return static_cast<double>(0.5L * erfcl(-static_cast<long double>(x) * kInvSqrt2L));
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("norm_quantile requires 0 < p < 1");
    return as241(p);
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0) || !(x >= 0.0 && x <= 1.0))
        throw std::domain_error("regularized_incomplete_beta domain violation");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double front =
            std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
        return front * beta_continued_fraction(x, a, b) / a;
    }
    const double front =
        std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(a, b));
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double t_pdf(double x, int df) {
    require_df(df);
    require_finite(x, "t_pdf argument");
    const double v = df;
    const double lognorm =
        std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v) - 0.5 * std::log(v * M_PI);
    return std::exp(lognorm - 0.5 * (v + 1.0) * std::log1p(x * x / v));
}

double t_cdf(double x, int df) {
    require_df(df);
    require_finite(x, "t_cdf argument");
    if (x == 0.0) return 0.5;
    const double v = df;
    const double half_tail =
        0.5 * regularized_incomplete_beta(v / (x * x + v), 0.5 * v, 0.5);
    return x > 0.0 ? 1.0 - half_tail : half_tail;
}

double t_quantile(double p, int df) {
    require_df(df);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("t_quantile requires 0 < p < 1");
    if (p == 0.5) return 0.0;

    // Initial guess: closed forms for df 1 and 2, otherwise a one-term
    // Cornish-Fisher correction of the normal quantile.
    double guess;
    if (df == 1) {
        guess = std::tan(M_PI * (p - 0.5));
    } else if (df == 2) {
        guess = (2.0 * p - 1.0) / std::sqrt(2.0 * p * (1.0 - p));
    } else {
        const double z = norm_quantile(p);
        guess = z + (z * z * z + z) / (4.0 * df);
    }

    // Expand a bracket around the guess, then safeguarded Newton on the CDF.
    double w = std::max(0.5, 0.1 * std::fabs(guess));
    double lo = guess - w, hi = guess + w;
    while (t_cdf(lo, df) > p) { lo -= w; w *= 2.0; }
    while (t_cdf(hi, df) < p) { hi += w; w *= 2.0; }

    const auto res = solve_increasing([df](double t) { return t_cdf(t, df); },
                                      [df](double t) { return t_pdf(t, df); }, p, lo, hi,
                                      1e-15);
    return res.x;
}

}  // namespace equitest
