#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "equitest/critical.hpp"
#include "equitest/distfn.hpp"
#include "equitest/rng.hpp"
#include "oracles.hpp"

using namespace equitest;

namespace {

// Frozen from the bisection oracle over the erf-series normal CDF; matched
// against a 40-digit mpmath run.
const double kC_a05_d1 = 0.10331847967255690;
const double kC_a05_d2 = 0.42519025368667001;
const double kC_a05_d3 = 1.35521081821333078;
const double kC_a05_dTiny = 0.062706777943213791;  // delta = 1e-8
const double kPower0_d1 = 0.08228979055139177;
const double kPower0_d2 = 0.32930201149574885;
const double kLfWeight = 0.75066598408474768;      // m=0.5, delta=1, sigma=1, alpha=0.05
const double kTostLimit_d2 = 0.27752006262467013;  // h=0, alpha=0.05, delta=2, sigma=1
const double kCoverageAtDelta = 0.47724986805182079;  // C=delta, delta=sigma

const double kAlphaGrid[] = {0.01, 0.05, 0.10, 0.20, 0.30};
const double kRatioGrid[] = {0.1, 0.5, 1.0, 2.0, 5.0};

}  // namespace

TEST_CASE("coverage_level basics") {
    CHECK(coverage_level(0.0, 1.0, 1.0) == 0.0);
    CHECK(coverage_level(0.0, 0.3, 2.0) == 0.0);

    const double got = coverage_level(1.0, 1.0, 1.0);
    CHECK(got == doctest::Approx(0.5 - norm_cdf(-2.0)).epsilon(1e-14));
    CHECK(std::fabs(got - kCoverageAtDelta) < 1e-14);

    CHECK(coverage_level(60.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("coverage_level strictly increasing in C") {
    // Strict until the value saturates at 1 in double precision, monotone
    // after that.
    for (double delta : {0.5, 1.0, 3.0}) {
        for (double sigma : {0.5, 1.0, 2.0}) {
            double prev = coverage_level(0.0, delta, sigma);
            for (double c = 0.01; c <= 10.0; c += 0.01) {
                const double cur = coverage_level(c, delta, sigma);
                if (prev < 1.0 - 1e-13)
                    CHECK(cur > prev);
                else
                    CHECK(cur >= prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("coverage_level domain errors") {
    CHECK_THROWS_AS(coverage_level(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(coverage_level(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(coverage_level(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(coverage_level(-0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("critical_constant frozen values") {
    CHECK(std::fabs(critical_constant({0.05, 1.0, 1.0}).c - kC_a05_d1) < 1e-10);
    CHECK(std::fabs(critical_constant({0.05, 2.0, 1.0}).c - kC_a05_d2) < 1e-10);
    CHECK(std::fabs(critical_constant({0.05, 3.0, 1.0}).c - kC_a05_d3) < 1e-10);
    // spec-quoted rounded targets
    CHECK(critical_constant({0.05, 1.0, 1.0}).c == doctest::Approx(0.1033).epsilon(5e-3));
    CHECK(critical_constant({0.05, 3.0, 1.0}).c == doctest::Approx(1.3554).epsilon(5e-4));
}

TEST_CASE("critical_constant matches the bisection oracle on a grid") {
    for (double alpha : kAlphaGrid) {
        for (double ratio : kRatioGrid) {
            const double got = critical_constant({alpha, ratio, 1.0}).c;
            const double want =
                (double)oracle::critical_constant((long double)alpha, (long double)ratio, 1.0L);
            CHECK(std::fabs(got - want) < 1e-9);
        }
    }
}

TEST_CASE("critical_constant residual <= 1e-10 across the grid") {
    for (double alpha : kAlphaGrid) {
        for (double ratio : kRatioGrid) {
            const CriticalConstant crit = critical_constant({alpha, ratio, 1.0});
            CHECK(crit.residual <= 1e-10);
            CHECK(std::fabs(coverage_level(crit.c, ratio, 1.0) - alpha) <= 1e-10);
        }
    }
}

TEST_CASE("critical_constant is deterministic") {
    const CriticalConstant a = critical_constant({0.05, 1.3, 0.7});
    const CriticalConstant b = critical_constant({0.05, 1.3, 0.7});
    CHECK(a.c == b.c);
    CHECK(a.residual == b.residual);
}

TEST_CASE("critical_constant lower bound is strict") {
    for (double alpha : {0.01, 0.05, 0.1}) {
        for (double ratio : kRatioGrid) {
            const double c = critical_constant({alpha, ratio, 1.0}).c;
            CHECK(c > ratio - norm_quantile(1.0 - alpha));
        }
    }
}

TEST_CASE("critical_constant scaling identity") {
    for (double alpha : {0.01, 0.05, 0.1}) {
        for (double ratio : kRatioGrid) {
            for (double sigma : {0.25, 1.0, 3.0}) {
                const double lhs = critical_constant({alpha, ratio * sigma, sigma}).c / sigma;
                const double rhs = critical_constant({alpha, ratio, 1.0}).c;
                CHECK(std::fabs(lhs - rhs) < 1e-9);
            }
        }
    }
}

TEST_CASE("critical_constant limits") {
    // Vanishing margin: C tends to the z-value with Phi(z) = (1 + alpha)/2,
    // the root of 2*Phi(C) - 1 = alpha.
    const double c_tiny = critical_constant({0.05, 1e-8, 1.0}).c;
    CHECK(std::fabs(c_tiny - kC_a05_dTiny) < 1e-10);
    CHECK(std::fabs(c_tiny - norm_quantile(0.525)) < 1e-5);
    for (double alpha : {0.01, 0.2, 0.5, 0.9}) {
        CHECK(std::fabs(critical_constant({alpha, 1e-8, 1.0}).c -
                        norm_quantile(0.5 * (1.0 + alpha))) < 1e-5);
    }
    // Growing margin: C diverges with the margin.
    CHECK(critical_constant({0.05, 50.0, 1.0}).c > 48.0);
}

TEST_CASE("critical_constant domain errors") {
    CHECK_THROWS_AS(critical_constant({1.5, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(critical_constant({0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(critical_constant({0.05, -1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(critical_constant({0.05, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("exact_power values") {
    CHECK(std::fabs(exact_power(0.0, {0.05, 1.0, 1.0}) - kPower0_d1) < 1e-10);
    CHECK(std::fabs(exact_power(0.0, {0.05, 2.0, 1.0}) - kPower0_d2) < 1e-10);
    CHECK(exact_power(0.0, {0.05, 1.0, 1.0}) == doctest::Approx(0.0823).epsilon(2e-2));
    CHECK(exact_power(0.0, {0.05, 2.0, 1.0}) == doctest::Approx(0.330).epsilon(1e-2));
}

TEST_CASE("exact_power equals alpha at the margin") {
    for (double alpha : kAlphaGrid)
        for (double delta : kRatioGrid)
            CHECK(std::fabs(exact_power(delta, {alpha, delta, 1.0}) - alpha) <= 1e-10);
}

TEST_CASE("exact_power strictly decreasing, above alpha inside the margin") {
    for (double delta : {0.5, 1.0, 2.0}) {
        const EquivalenceSpec spec(0.05, delta, 1.0);
        double prev = exact_power(0.0, spec);
        for (int i = 1; i <= 40; ++i) {
            const double dp = 2.0 * delta * i / 40.0;
            const double cur = exact_power(dp, spec);
            CHECK(cur < prev);
            if (dp < delta) CHECK(cur > 0.05);
            prev = cur;
        }
    }
}

TEST_CASE("exact_power domain error") {
    CHECK_THROWS_AS(exact_power(-0.1, {0.05, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("p_value basics") {
    CHECK(p_value(0.0, 1.0, 1.0) == 0.0);
    CHECK(p_value(0.1033, 1.0, 1.0) == doctest::Approx(0.05).epsilon(1e-2));
    CHECK(std::fabs(p_value(0.1033, 1.0, 1.0) - 0.05) < 5e-4);
    CHECK(p_value(1000.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("p_value / critical_constant duality") {
    SplitMix64 rng(20240817u);
    int checked = 0;
    while (checked < 200) {
        const double alpha = 0.01 + 0.6 * rng.uniform01();
        const double delta = 0.1 + 3.0 * rng.uniform01();
        const double sigma = 0.2 + 2.0 * rng.uniform01();
        const double t = 4.0 * rng.uniform01();
        const double c = critical_constant({alpha, delta, sigma}).c;
        if (std::fabs(t - c) < 1e-9) continue;  // exclude ties
        ++checked;
        const bool by_p = p_value(t, delta, sigma) <= alpha;
        const bool by_c = t <= c;
        CHECK(by_p == by_c);
    }
}

TEST_CASE("least_favorable_weight values") {
    CHECK(least_favorable_weight(0.0, 1.0, 1.0, 0.05) == 0.5);
    CHECK(std::fabs(least_favorable_weight(0.5, 1.0, 1.0, 0.05) - kLfWeight) < 1e-12);
    CHECK(least_favorable_weight(0.5, 1.0, 1.0, 0.05) ==
          doctest::Approx(0.7506).epsilon(2e-3));
    CHECK(least_favorable_weight(1.0 - 1e-6, 1.0, 1.0, 0.05) > 0.99);
}

TEST_CASE("least_favorable_weight domain errors") {
    CHECK_THROWS_AS(least_favorable_weight(1.0, 1.0, 1.0, 0.05), std::domain_error);
    CHECK_THROWS_AS(least_favorable_weight(-1.2, 1.0, 1.0, 0.05), std::domain_error);
}

TEST_CASE("lf_ratio values") {
    CHECK(lf_ratio(0.0, 0.3, 1.0, 1.0, 0.4) == 1.0);
    CHECK(lf_ratio(0.0, -0.7, 2.0, 0.5, 0.9) == 1.0);
    CHECK(lf_ratio(1.0, 0.0, 1.0, 1.0, 0.5) ==
          doctest::Approx(1.5430806348152437).epsilon(1e-14));
}

// Shared scan assertions: balance at +-C, convexity, and the small-f region
// being exactly {|x| <= C}. Tolerances scale with f, whose magnitude grows
// like exp((delta -+ m) C / sigma^2).
static void check_lf_construction(double alpha, double delta, double sigma, double m) {
    using doctest::Approx;
    const double c = critical_constant({alpha, delta, sigma}).c;
    const double p = least_favorable_weight(m, delta, sigma, alpha);
    const double fc = lf_ratio(c, m, delta, sigma, p);

    CAPTURE(alpha); CAPTURE(delta); CAPTURE(sigma); CAPTURE(m);
    CHECK(std::fabs(lf_ratio(c, m, delta, sigma, p) - lf_ratio(-c, m, delta, sigma, p)) <=
          1e-9 * std::max(1.0, fc));

    const double span = 3.0 * std::max(c, 1.0);
    const int steps = 400;
    const double hstep = 2.0 * span / steps;
    double fm1 = lf_ratio(-span, m, delta, sigma, p);
    double f0 = lf_ratio(-span + hstep, m, delta, sigma, p);
    for (int k = 2; k <= steps; ++k) {
        const double fp1 = lf_ratio(-span + k * hstep, m, delta, sigma, p);
        CHECK(fp1 - 2.0 * f0 + fm1 >= -1e-12 * std::max(1.0, fp1 + fm1));
        fm1 = f0;
        f0 = fp1;
    }

    for (int k = 0; k <= steps; ++k) {
        const double x = -span + k * hstep;
        const double fx = lf_ratio(x, m, delta, sigma, p);
        if (std::fabs(fx - fc) <= 1e-9 * std::max(1.0, fc)) continue;  // boundary slack
        CHECK((fx <= fc) == (std::fabs(x) <= c));
    }
}

TEST_CASE("least-favorable construction balances the ratio at +-C") {
    // O(1) scales: the plain 1e-9 absolute comparison is meaningful here.
    SplitMix64 rng(7u);
    for (int i = 0; i < 10; ++i) {
        const double alpha = 0.02 + 0.3 * rng.uniform01();
        const double delta = 0.3 + 1.2 * rng.uniform01();
        const double sigma = 0.7 + 0.8 * rng.uniform01();
        const double m = (2.0 * rng.uniform01() - 1.0) * 0.95 * delta;
        const double c = critical_constant({alpha, delta, sigma}).c;
        const double p = least_favorable_weight(m, delta, sigma, alpha);
        CHECK(std::fabs(lf_ratio(c, m, delta, sigma, p) -
                        lf_ratio(-c, m, delta, sigma, p)) < 1e-9);
        check_lf_construction(alpha, delta, sigma, m);
    }
}

TEST_CASE("least-favorable construction survives extreme scales") {
    // Wide parameter ranges push the exponents far enough that the log-space
    // weight computation is the only thing keeping p (and f) finite.
    SplitMix64 rng(99u);
    for (int i = 0; i < 10; ++i) {
        const double alpha = 0.02 + 0.3 * rng.uniform01();
        const double delta = 0.2 + 2.5 * rng.uniform01();
        const double sigma = 0.3 + 1.5 * rng.uniform01();
        const double m = (2.0 * rng.uniform01() - 1.0) * 0.95 * delta;
        check_lf_construction(alpha, delta, sigma, m);
    }
}

TEST_CASE("tost_limit_power values") {
    // sigma * z_{1-alpha} >= delta: limiting power is identically zero
    CHECK(tost_limit_power(0.0, 0.05, 1.0, 1.0) == 0.0);
    CHECK(tost_limit_power(0.4, 0.05, 1.0, 1.0) == 0.0);
    CHECK(std::fabs(tost_limit_power(0.0, 0.05, 2.0, 1.0) - kTostLimit_d2) < 1e-12);
    CHECK(tost_limit_power(0.0, 0.05, 2.0, 1.0) == doctest::Approx(0.2775).epsilon(4e-3));
    CHECK(tost_limit_power(100.0, 0.05, 2.0, 1.0) == 0.0);
    for (double h = 0.0; h <= 6.0; h += 0.25) {
        const double v = tost_limit_power(h, 0.05, 2.0, 1.0);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("onesided_local_power values") {
    for (double alpha : {0.01, 0.05, 0.2})
        CHECK(std::fabs(onesided_local_power(0.0, alpha, 1.0) - alpha) < 1e-14);
    const double z = norm_quantile(0.95);
    CHECK(std::fabs(onesided_local_power(2.0 * z, 0.05, 2.0) - 0.5) < 1e-14);
    CHECK(onesided_local_power(3.29, 0.05, 1.0) == doctest::Approx(0.95).epsilon(1e-3));

    double prev = onesided_local_power(0.0, 0.05, 1.0);
    for (double h = 0.05; h <= 5.0; h += 0.05) {
        const double cur = onesided_local_power(h, 0.05, 1.0);
        CHECK(cur > prev);
        prev = cur;
    }
}
