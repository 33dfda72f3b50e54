#ifndef EQUITEST_CRITICAL_HPP
#define EQUITEST_CRITICAL_HPP

namespace equitest {

// Symmetric equivalence testing problem: the null asserts that the parameter
// of interest lies outside (-delta, delta); sigma is the standard deviation
// of the Gaussian test statistic; alpha is the test level.
struct EquivalenceSpec {
    double alpha;
    double delta;
    double sigma;

    EquivalenceSpec(double alpha, double delta, double sigma);
};

struct CriticalConstant {
    double c;               // unique C > 0 with coverage_level(c) = alpha
    EquivalenceSpec spec;
    double residual;        // |coverage_level(c) - alpha| achieved
};

// h(C) = Phi((C - delta)/sigma) - Phi((-C - delta)/sigma): the rejection
// probability of the region {|X| <= C} at the null boundary. Strictly
// increasing in C, h(0) = 0, h(inf) = 1.
double coverage_level(double c, double delta, double sigma);

// Solves coverage_level(C) = alpha. Residual <= 1e-10 guaranteed;
// deterministic (same inputs give bit-identical output).
CriticalConstant critical_constant(const EquivalenceSpec& spec);

// Power of the optimal test at an alternative whose parameter of interest has
// absolute value delta_prime. Equals alpha at delta_prime = delta; strictly
// decreasing in delta_prime.
double exact_power(double delta_prime, const EquivalenceSpec& spec);

// Smallest level at which a statistic with |T| = t_abs still rejects;
// p_value(t) <= alpha iff t <= critical_constant(alpha, delta, sigma).c.
double p_value(double t_abs, double delta, double sigma);

// Weight p of the two-point prior on {+delta, -delta} that makes the
// likelihood-ratio region symmetric, i.e. lf_ratio(C) = lf_ratio(-C) with
// C = critical_constant(alpha, delta, sigma).c. Requires |m| < delta.
double least_favorable_weight(double m, double delta, double sigma, double alpha);

// f(x) = p*exp((delta - m)*x/sigma^2) + (1 - p)*exp(-(delta + m)*x/sigma^2),
// the likelihood ratio of the two-point prior mixture against N(m, sigma^2)
// (up to a positive factor). Convex, f(0) = 1.
double lf_ratio(double x, double m, double delta, double sigma, double p);

// Limiting local power of the two-one-sided-tests procedure at shift h:
// max(0, Phi(delta/sigma - z_{1-alpha} - h/sigma)
//        - Phi(-delta/sigma + z_{1-alpha} - h/sigma)).
// Identically zero whenever sigma * z_{1-alpha} >= delta.
double tost_limit_power(double h, double alpha, double delta, double sigma);

// Optimal local power for the one-sided problem: Phi(h/sigma - z_{1-alpha}).
// Equals alpha at h = 0 and is strictly increasing in h >= 0.
double onesided_local_power(double h, double alpha, double sigma);

}  // namespace equitest

#endif
