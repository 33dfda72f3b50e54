// Independent numerical oracles used only by the test suites. Everything here
// is deliberately written against different algorithms than the library:
// Taylor series and a Mills-ratio continued fraction instead of erfc, Simpson
// quadrature of the t density instead of the incomplete beta function, and
// plain bisection instead of safeguarded Newton.
#ifndef EQUITEST_TESTS_ORACLES_HPP
#define EQUITEST_TESTS_ORACLES_HPP

#include <functional>
#include <vector>

namespace oracle {

// Standard normal CDF from a long-double erf Taylor series (central range)
// and a Mills-ratio continued fraction (tails).
long double norm_cdf(long double x);

// Quantile by bisection on oracle::norm_cdf.
long double norm_quantile(long double p);

// Student-t CDF by adaptive Simpson quadrature of the density.
long double t_cdf(long double x, int df);

// Quantile by bisection on oracle::t_cdf.
long double t_quantile(long double p, int df);

// h(C) of the critical-constant equation, built on oracle::norm_cdf.
long double coverage(long double c, long double delta, long double sigma);

// Root of coverage(C) = alpha by plain bisection.
long double critical_constant(long double alpha, long double delta, long double sigma);

// Exact power of the optimal test at an alternative delta_prime.
long double exact_power(long double delta_prime, long double alpha, long double delta,
                        long double sigma);

// Central finite-difference gradient, default relative step ~ cbrt(eps).
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double step = 6e-6);

}  // namespace oracle

#endif
