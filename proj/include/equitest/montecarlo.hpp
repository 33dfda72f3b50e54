#ifndef EQUITEST_MONTECARLO_HPP
#define EQUITEST_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "equitest/linalg.hpp"
#include "equitest/models.hpp"
#include "equitest/procedures.hpp"

namespace equitest {

enum class SimModel { Normal, TwoSampleNormal, Bernoulli, GaussianLinear };

enum class ReferenceSource { ExactPower, AsymptoticBound, TostLimit, OneSidedBound, None };

const char* sim_model_name(SimModel m);
const char* reference_source_name(ReferenceSource s);

// Full description of one simulation: which procedure, which data-generating
// parameter, sample size, replication count and master seed. A fixed seed
// makes the run fully deterministic, independent of the worker count.
struct SimConfig {
    Method procedure = Method::UmpKnownSigma;
    SimModel model = SimModel::Normal;

    Theta theta0;                       // data-generating parameter (mean vector for GaussianLinear)
    std::vector<double> shift;          // local shift h; theta = theta0 + shift/sqrt(n)
    bool local_alternative = false;

    long n = 1;                         // per-replication sample size (GaussianLinear draws once)
    long long replications = 1;
    std::uint64_t seed = 0;

    double alpha = 0.05;
    double delta = 1.0;                 // equivalence margin
    bool delta_is_local = true;         // margin on the sqrt(n) scale: raw margin = delta/sqrt(n)

    double allocation = 0.5;            // two-sample group-1 probability
    double bernoulli_ref = 0.5;         // reference c in g(p) = p - c

    std::vector<double> weights;        // a (GaussianLinear)
    Matrix covariance;                  // Sigma (GaussianLinear)

    int threads = 0;                    // 0 = all available; 1 = serial reference path
    bool with_reference = true;         // fill the analytic reference value
};

// Monte Carlo rejection estimate. replications = rejections + acceptances +
// errors always; mc_standard_error^2 * replications = rate * (1 - rate)
// exactly. reference_value / z_discrepancy are NaN when no reference applies.
struct SimReport {
    long long replications = 0;
    long long rejections = 0;
    long long acceptances = 0;
    long long errors = 0;
    double rejection_rate = 0.0;
    double mc_standard_error = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;    // 95% interval, clamped to [0, 1]
    double reference_value;
    ReferenceSource reference_source = ReferenceSource::None;
    double z_discrepancy;               // (rate - reference) / SE
};

struct SimTableRow {
    double point = 0.0;                 // grid value (local functional value or h)
    SimReport report;
};

// The data-generating theta the config resolves to (theta0 plus the local
// shift when enabled). Validates dimensions against the model.
Theta resolved_theta(const SimConfig& config);

// Runs `replications` independent replicates and estimates the rejection
// probability. Replicate i draws its data from a stream derived from
// (seed, i) only, so the aggregate report is bit-identical for any worker
// count. Replicates whose procedure throws are counted as errors.
SimReport estimate_rejection(const SimConfig& config);

// One report per grid point; each point is a local functional value
// (sqrt(n) * g(theta), or h for TOST curves) at which the data are generated,
// with the matching analytic reference attached.
std::vector<SimTableRow> power_curve(const SimConfig& config, std::span<const double> grid);

// Size estimates across null boundary points, i.e. thetas with
// |sqrt(n) * g(theta)| equal to the local margin (validated to 1e-9).
std::vector<SimTableRow> boundary_size_sweep(const SimConfig& config,
                                             std::span<const Theta> boundary_points);

// Boundary thetas theta0 +/- dir * margin for the configured model, where dir
// is the model's unit functional direction; convenience for the sweep above.
std::vector<Theta> default_boundary_points(const SimConfig& config);

}  // namespace equitest

#endif
