#ifndef EQUITEST_DISTFN_HPP
#define EQUITEST_DISTFN_HPP

namespace equitest {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF. Absolute error <= 1e-14; monotone on any grid.
// Throws std::domain_error for non-finite input.
double norm_cdf(double x);

// Standard normal quantile on (0, 1): |norm_cdf(result) - p| <= 1e-12.
// Throws std::domain_error unless 0 < p < 1.
double norm_quantile(double p);

// Student-t density and CDF with df >= 1 degrees of freedom. CDF absolute
// error <= 1e-12. Throws std::domain_error for df < 1 or non-finite x.
double t_pdf(double x, int df);
double t_cdf(double x, int df);

// Student-t quantile: |t_cdf(result, df) - p| <= 1e-10.
double t_quantile(double p, int df);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation. Exposed because the t CDF is a thin wrapper around it.
double regularized_incomplete_beta(double x, double a, double b);

}  // namespace equitest

#endif
