#ifndef EQUITEST_ROOTFIND_HPP
#define EQUITEST_ROOTFIND_HPP

#include <cmath>
#include <utility>

#include "equitest/errors.hpp"

namespace equitest {

struct RootResult {
    double x = 0.0;
    double residual = 0.0;  // f(x) - target at the returned point
    int iterations = 0;
};

// Safeguarded Newton for a strictly increasing function: solves f(x) = target
// on [lo, hi]. Newton steps that leave the current bracket, or that shrink it
// too slowly, fall back to bisection, so convergence is guaranteed. The
// bracket must satisfy f(lo) <= target <= f(hi).
template <class F, class DF>
RootResult solve_increasing(F f, DF df, double target, double lo, double hi,
                            double xtol, int max_iter = 200) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo > 0.0 || fhi < 0.0)
        throw NumericalError("root bracket does not straddle the target");
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};

    double x = 0.5 * (lo + hi);
    double fx = f(x) - target;
    RootResult out{x, fx, 0};
    double step_prev = hi - lo;
    for (int it = 1; it <= max_iter; ++it) {
        out.iterations = it;
        if (fx == 0.0) break;
        if (fx < 0.0)
            lo = x;
        else
            hi = x;

        double d = df(x);
        double step = (d > 0.0) ? fx / d : 0.0;
        double cand = x - step;
        if (!(cand > lo && cand < hi) || std::fabs(step) > 0.5 * step_prev) {
            // Bisect when Newton leaves the bracket or stalls.
            cand = 0.5 * (lo + hi);
            step = x - cand;
        }
        step_prev = std::fabs(step);
        x = cand;
        fx = f(x) - target;
        out.x = x;
        out.residual = fx;
        if (std::fabs(step) <= xtol * (1.0 + std::fabs(x))) break;
        if (hi - lo <= xtol * (1.0 + std::fabs(x))) break;
    }
    return out;
}

}  // namespace equitest

#endif
