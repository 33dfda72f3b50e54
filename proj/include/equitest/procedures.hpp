#ifndef EQUITEST_PROCEDURES_HPP
#define EQUITEST_PROCEDURES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "equitest/critical.hpp"
#include "equitest/linalg.hpp"
#include "equitest/models.hpp"

namespace equitest {

enum class Method { UmpKnownSigma, UmpLinearGaussian, Tost, Plugin };

const char* method_name(Method m);

// Outcome of one equivalence test. Rejecting the null declares equivalence.
// For the UMP and plug-in methods, reject <=> statistic <= critical_value
// <=> p_value <= alpha (ties broken toward rejection; the boundary event has
// probability zero under continuous models).
struct TestDecision {
    Method method;
    std::size_t n = 0;
    double statistic = 0.0;
    double critical_value = 0.0;
    double p_value = 0.0;
    double sigma_used = 0.0;
    bool reject = false;
    EquivalenceSpec spec;   // alpha / margin / sigma actually used
    std::string diagnostics;
};

// Exact UMP test for the mean of i.i.d. N(mu, sigma^2) with known sigma:
// reject |mu| >= margin when sqrt(n)*|mean| <= C(alpha, sqrt(n)*margin, sigma).
TestDecision ump_known_sigma(std::span<const double> data, double sigma,
                             double alpha, double margin);

// Exact UMP test for |a^T mu| >= delta based on one draw x ~ N(mu, Sigma)
// with known covariance. Requires Sigma symmetric and a^T Sigma a > 0.
TestDecision ump_linear_gaussian(std::span<const double> x, std::span<const double> a,
                                 const Matrix& sigma, double alpha, double delta);

// Two one-sided t-tests: reject |mu| >= margin when
// |mean| <= margin - S_n * t_{n-1,1-alpha} / sqrt(n), S_n the unbiased
// sample standard deviation. The p-value is the larger of the two one-sided
// t-test p-values (intersection-union convention).
TestDecision tost(std::span<const double> data, double alpha, double margin);

// Plug-in test: reject |g(theta)| >= delta/sqrt(n) when
// sqrt(n)*|g(theta_hat)| <= C(alpha, delta, sigma_hat), theta_hat the MLE and
// sigma_hat = functional_sd at theta_hat unless an override is supplied.
TestDecision plugin_test(const Model& model, const FunctionalG& g, const DataSet& data,
                         double alpha, double delta,
                         std::optional<double> sigma_hat_override = {});

// Upper bound for the limiting local power of any asymptotically level-alpha
// test at an alternative with local functional value delta_prime, anchored at
// theta0 with g(theta0) = 0.
double asymptotic_power_bound(double delta_prime, const Model& model, const FunctionalG& g,
                              const Theta& theta0, double alpha, double delta);

}  // namespace equitest

#endif
