#include "equitest/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "equitest/critical.hpp"
#include "equitest/distfn.hpp"
#include "equitest/errors.hpp"
#include "equitest/rng.hpp"

namespace equitest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::unique_ptr<Model> make_model(const SimConfig& cfg) {
    switch (cfg.model) {
        case SimModel::Normal: return std::make_unique<NormalModel>();
        case SimModel::TwoSampleNormal:
            return std::make_unique<TwoSampleNormalModel>(cfg.allocation);
        case SimModel::Bernoulli: return std::make_unique<BernoulliModel>();
        case SimModel::GaussianLinear: return nullptr;  // sampled directly
    }
    throw std::domain_error("unknown simulation model");
}

FunctionalG make_functional(const SimConfig& cfg) {
    switch (cfg.model) {
        case SimModel::Normal: return mean_functional();
        case SimModel::TwoSampleNormal: return mean_difference_functional();
        case SimModel::Bernoulli: return probability_functional(cfg.bernoulli_ref);
        case SimModel::GaussianLinear: break;
    }
    throw std::domain_error("functional undefined for this model");
}

// Direction d with <grad g, d> = 1: shifting theta by v*d moves g by v.
std::vector<double> functional_direction(const SimConfig& cfg) {
    switch (cfg.model) {
        case SimModel::Normal: return {1.0, 0.0};
        case SimModel::TwoSampleNormal: return {0.5, -0.5, 0.0};
        case SimModel::Bernoulli: return {1.0};
        case SimModel::GaussianLinear: {
            double aa = 0.0;
            for (double w : cfg.weights) aa += w * w;
            if (!(aa > 0.0)) throw std::domain_error("weights must be nonzero");
            std::vector<double> d(cfg.weights.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = cfg.weights[i] / aa;
            return d;
        }
    }
    throw std::domain_error("unknown simulation model");
}

void validate(const SimConfig& cfg) {
    if (cfg.replications < 1) throw std::domain_error("replications must be >= 1");
    if (cfg.n < 1) throw std::domain_error("sample size must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::domain_error("alpha must lie in (0, 1)");
    if (!(cfg.delta > 0.0)) throw std::domain_error("delta must be positive");
    if (cfg.model == SimModel::GaussianLinear) {
        const std::size_t k = cfg.theta0.size();
        if (k == 0 || cfg.weights.size() != k || cfg.covariance.rows() != k ||
            cfg.covariance.cols() != k)
            throw std::domain_error("gaussian_linear needs theta0, weights and covariance "
                                    "of one common dimension");
        if (cfg.procedure != Method::UmpLinearGaussian)
            throw std::domain_error("gaussian_linear data only drive the linear UMP test");
        if (cfg.n != 1)
            throw std::domain_error("gaussian_linear draws once per replication; set n = 1");
    } else {
        const auto model = make_model(cfg);
        model->validate(resolved_theta(cfg));
        if (cfg.procedure == Method::UmpLinearGaussian)
            throw std::domain_error("the linear UMP test needs gaussian_linear data");
        if (cfg.procedure == Method::UmpKnownSigma && cfg.model != SimModel::Normal)
            throw std::domain_error("the known-sigma test needs one-sample normal data");
        if (cfg.procedure == Method::Tost && cfg.model == SimModel::TwoSampleNormal)
            throw std::domain_error("tost runs on one-sample data");
    }
}

// Margin on the raw data scale for fixed-margin procedures.
double raw_margin(const SimConfig& cfg) {
    return cfg.delta_is_local ? cfg.delta / std::sqrt(static_cast<double>(cfg.n))
                              : cfg.delta;
}

// Margin on the sqrt(n) (local) scale, used by the plug-in test and all
// asymptotic reference formulas.
double local_margin(const SimConfig& cfg) {
    return cfg.delta_is_local ? cfg.delta
                              : cfg.delta * std::sqrt(static_cast<double>(cfg.n));
}

struct ReplicateContext {
    const SimConfig* cfg = nullptr;
    Theta theta;
    std::unique_ptr<Model> model;  // null for GaussianLinear
    FunctionalG g;                 // empty for GaussianLinear
    Matrix chol;                   // GaussianLinear only
};

// Outcome codes for one replicate.
enum : int { kAccept = 0, kReject = 1, kError = 2 };

int run_replicate(const ReplicateContext& ctx, std::uint64_t index) {
    const SimConfig& cfg = *ctx.cfg;
    SplitMix64 rng(derive_stream_seed(cfg.seed, index));
    try {
        if (cfg.model == SimModel::GaussianLinear) {
            const std::size_t k = ctx.theta.size();
            std::vector<double> x(k);
            for (std::size_t i = 0; i < k; ++i) x[i] = norm_quantile(rng.uniform01());
            std::vector<double> draw = ctx.theta;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j <= i; ++j) draw[i] += ctx.chol(i, j) * x[j];
            const TestDecision d =
                ump_linear_gaussian(draw, cfg.weights, cfg.covariance, cfg.alpha, cfg.delta);
            return d.reject ? kReject : kAccept;
        }

        if (cfg.procedure == Method::Plugin) {
            DataSet data;
            data.obs.reserve(static_cast<std::size_t>(cfg.n));
            for (long i = 0; i < cfg.n; ++i)
                data.obs.push_back(ctx.model->sample(ctx.theta, rng));
            const TestDecision d =
                plugin_test(*ctx.model, ctx.g, data, cfg.alpha, local_margin(cfg));
            return d.reject ? kReject : kAccept;
        }

        // UmpKnownSigma / Tost consume the identical draw stream the plug-in
        // path sees, so procedures can be compared on the same data.
        std::vector<double> values(static_cast<std::size_t>(cfg.n));
        for (double& v : values) v = ctx.model->sample(ctx.theta, rng).value;
        const TestDecision d =
            cfg.procedure == Method::UmpKnownSigma
                ? ump_known_sigma(values, ctx.theta[1], cfg.alpha, raw_margin(cfg))
                : tost(values, cfg.alpha, raw_margin(cfg));
        return d.reject ? kReject : kAccept;
    } catch (const std::exception&) {
        return kError;
    }
}

struct Counts {
    long long reject = 0, accept = 0, error = 0;
};

// Serial reference path: one plain loop, no threading machinery. Kept both as
// the fallback and as the baseline the parallel path is tested against.
Counts run_replicates_serial(const ReplicateContext& ctx, long long replications) {
    Counts c;
    for (long long i = 0; i < replications; ++i) {
        switch (run_replicate(ctx, static_cast<std::uint64_t>(i))) {
            case kReject: ++c.reject; break;
            case kAccept: ++c.accept; break;
            default: ++c.error; break;
        }
    }
    return c;
}

#ifdef _OPENMP
Counts run_replicates_openmp(const ReplicateContext& ctx, long long replications,
                             int threads) {
    long long rej = 0, acc = 0, err = 0;
#pragma omp parallel for schedule(static) num_threads(threads) reduction(+ : rej, acc, err)
    for (long long i = 0; i < replications; ++i) {
        switch (run_replicate(ctx, static_cast<std::uint64_t>(i))) {
            case kReject: ++rej; break;
            case kAccept: ++acc; break;
            default: ++err; break;
        }
    }
    return Counts{rej, acc, err};
}
#endif

ReplicateContext make_context(const SimConfig& cfg) {
    validate(cfg);
    ReplicateContext ctx;
    ctx.cfg = &cfg;
    ctx.theta = resolved_theta(cfg);
    if (cfg.model == SimModel::GaussianLinear) {
        if (!cfg.covariance.is_symmetric(1e-9))
            throw std::domain_error("covariance matrix must be symmetric");
        ctx.chol = cholesky_psd(cfg.covariance);
    } else {
        ctx.model = make_model(cfg);
        ctx.g = make_functional(cfg);
    }
    return ctx;
}

double local_functional_value(const SimConfig& cfg, const Theta& theta) {
    if (cfg.model == SimModel::GaussianLinear) {
        double s = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) s += cfg.weights[i] * theta[i];
        return s;
    }
    const FunctionalG g = make_functional(cfg);
    return std::sqrt(static_cast<double>(cfg.n)) * g.value(theta);
}

void fill_reference(const SimConfig& cfg, const Theta& theta, SimReport& report) {
    const double delta_prime = std::fabs(local_functional_value(cfg, theta));
    double sd;
    if (cfg.model == SimModel::GaussianLinear) {
        sd = std::sqrt(quadratic_form(cfg.weights, cfg.covariance));
    } else {
        const auto model = make_model(cfg);
        const FunctionalG g = make_functional(cfg);
        sd = functional_sd(*model, g, theta);
    }
    const double margin = local_margin(cfg);
    switch (cfg.procedure) {
        case Method::UmpKnownSigma:
        case Method::UmpLinearGaussian:
            report.reference_value = exact_power(delta_prime, EquivalenceSpec(cfg.alpha, margin, sd));
            report.reference_source = ReferenceSource::ExactPower;
            break;
        case Method::Plugin:
            report.reference_value = exact_power(delta_prime, EquivalenceSpec(cfg.alpha, margin, sd));
            report.reference_source = ReferenceSource::AsymptoticBound;
            break;
        case Method::Tost:
            report.reference_value = tost_limit_power(delta_prime, cfg.alpha, margin, sd);
            report.reference_source = ReferenceSource::TostLimit;
            break;
    }
    if (report.mc_standard_error > 0.0)
        report.z_discrepancy =
            (report.rejection_rate - report.reference_value) / report.mc_standard_error;
}

SimReport summarize(const SimConfig& cfg, const Theta& theta, const Counts& c) {
    SimReport r;
    r.replications = cfg.replications;
    r.rejections = c.reject;
    r.acceptances = c.accept;
    r.errors = c.error;
    const double rate = static_cast<double>(c.reject) / static_cast<double>(cfg.replications);
    r.rejection_rate = rate;
    r.mc_standard_error = std::sqrt(rate * (1.0 - rate) / static_cast<double>(cfg.replications));
    r.ci_lo = std::max(0.0, rate - 1.96 * r.mc_standard_error);
    r.ci_hi = std::min(1.0, rate + 1.96 * r.mc_standard_error);
    r.reference_value = kNaN;
    r.z_discrepancy = kNaN;
    if (cfg.with_reference) fill_reference(cfg, theta, r);
    return r;
}

}  // namespace

const char* sim_model_name(SimModel m) {
    switch (m) {
        case SimModel::Normal: return "normal";
        case SimModel::TwoSampleNormal: return "two_sample_normal";
        case SimModel::Bernoulli: return "bernoulli";
        case SimModel::GaussianLinear: return "gaussian_linear";
    }
    return "unknown";
}

const char* reference_source_name(ReferenceSource s) {
    switch (s) {
        case ReferenceSource::ExactPower: return "exact_power";
        case ReferenceSource::AsymptoticBound: return "asymptotic_bound";
        case ReferenceSource::TostLimit: return "tost_limit";
        case ReferenceSource::OneSidedBound: return "onesided_bound";
        case ReferenceSource::None: return "none";
    }
    return "unknown";
}

Theta resolved_theta(const SimConfig& cfg) {
    Theta theta = cfg.theta0;
    if (cfg.local_alternative) {
        if (cfg.shift.size() != theta.size())
            throw std::domain_error("local shift dimension mismatch");
        const double root_n = std::sqrt(static_cast<double>(cfg.n));
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += cfg.shift[i] / root_n;
    }
    return theta;
}

SimReport estimate_rejection(const SimConfig& cfg) {
    const ReplicateContext ctx = make_context(cfg);
    Counts counts;
#ifdef _OPENMP
    int threads = cfg.threads;
    if (threads <= 0) threads = omp_get_max_threads();
    if (threads == 1)
        counts = run_replicates_serial(ctx, cfg.replications);
    else
        counts = run_replicates_openmp(ctx, cfg.replications, threads);
#else
    counts = run_replicates_serial(ctx, cfg.replications);
#endif
    return summarize(cfg, ctx.theta, counts);
}

std::vector<SimTableRow> power_curve(const SimConfig& cfg, std::span<const double> grid) {
    if (grid.empty()) throw std::domain_error("power_curve needs a nonempty grid");
    for (double v : grid)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::domain_error("grid values must be >= 0 and finite");
    validate(cfg);

    const std::vector<double> dir = functional_direction(cfg);
    const double root_n = cfg.model == SimModel::GaussianLinear
                              ? 1.0
                              : std::sqrt(static_cast<double>(cfg.n));
    std::vector<SimTableRow> rows;
    rows.reserve(grid.size());
    for (double v : grid) {
        SimConfig point = cfg;
        point.local_alternative = false;
        point.theta0 = resolved_theta(cfg);
        for (std::size_t i = 0; i < point.theta0.size(); ++i)
            point.theta0[i] += v * dir[i] / root_n;
        rows.push_back(SimTableRow{v, estimate_rejection(point)});
    }
    return rows;
}

std::vector<SimTableRow> boundary_size_sweep(const SimConfig& cfg,
                                             std::span<const Theta> boundary_points) {
    if (boundary_points.empty())
        throw std::domain_error("boundary_size_sweep needs at least one point");
    validate(cfg);
    const double margin = local_margin(cfg);
    std::vector<SimTableRow> rows;
    rows.reserve(boundary_points.size());
    for (const Theta& theta : boundary_points) {
        SimConfig point = cfg;
        point.local_alternative = false;
        point.theta0 = theta;
        const double value = local_functional_value(point, theta);
        if (std::fabs(std::fabs(value) - margin) > 1e-9) {
            std::ostringstream msg;
            msg << "boundary point has local functional value " << value
                << ", expected magnitude " << margin;
            throw std::domain_error(msg.str());
        }
        rows.push_back(SimTableRow{value, estimate_rejection(point)});
    }
    return rows;
}

std::vector<Theta> default_boundary_points(const SimConfig& cfg) {
    validate(cfg);
    const std::vector<double> dir = functional_direction(cfg);
    const double root_n = cfg.model == SimModel::GaussianLinear
                              ? 1.0
                              : std::sqrt(static_cast<double>(cfg.n));
    const Theta base = resolved_theta(cfg);
    const double margin = local_margin(cfg);
    std::vector<Theta> points;
    for (double sign : {+1.0, -1.0}) {
        Theta t = base;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += sign * margin * dir[i] / root_n;
        points.push_back(std::move(t));
    }
    return points;
}

}  // namespace equitest
