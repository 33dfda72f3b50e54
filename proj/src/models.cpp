#include "equitest/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "equitest/distfn.hpp"
#include "equitest/errors.hpp"

namespace equitest {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double normal_log_density(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -std::log(sigma) - kLogSqrt2Pi - 0.5 * z * z;
}

}  // namespace

DataSet::DataSet(std::span<const double> values) {
    obs.reserve(values.size());
    for (double v : values) obs.push_back(Observation{v, 1});
}

std::vector<double> Model::score(const Observation& x, const Theta& theta) const {
    std::vector<double> out(dim());
    score_into(x, theta, out.data());
    return out;
}

void Model::validate(const Theta& theta) const {
    if (theta.size() != dim()) {
        std::ostringstream msg;
        msg << name() << " expects a parameter of dimension " << dim() << ", got "
            << theta.size();
        throw std::domain_error(msg.str());
    }
    if (!in_domain(theta)) {
        std::ostringstream msg;
        msg << "parameter outside the domain of " << name();
        throw std::domain_error(msg.str());
    }
}

// ---------------------------------------------------------------------------
// NormalModel
// ---------------------------------------------------------------------------

bool NormalModel::in_domain(const Theta& theta) const {
    return theta.size() == 2 && std::isfinite(theta[0]) && theta[1] > 0.0 &&
           std::isfinite(theta[1]);
}

double NormalModel::log_density(const Observation& x, const Theta& theta) const {
    require_domain(theta);
    return normal_log_density(x.value, theta[0], theta[1]);
}

void NormalModel::score_into(const Observation& x, const Theta& theta, double* out) const {
    const double mu = theta[0], sigma = theta[1];
    const double d = x.value - mu;
    const double s2 = sigma * sigma;
    out[0] = d / s2;
    out[1] = (d * d - s2) / (s2 * sigma);
}

Matrix NormalModel::fisher(const Theta& theta) const {
    require_domain(theta);
    const double s2 = theta[1] * theta[1];
    return Matrix(2, 2, {1.0 / s2, 0.0, 0.0, 2.0 / s2});
}

Observation NormalModel::sample(const Theta& theta, SplitMix64& rng) const {
    return Observation{theta[0] + theta[1] * norm_quantile(rng.uniform01()), 1};
}

MleResult NormalModel::mle(const DataSet& data) const {
    const std::size_t n = data.size();
    if (n < 2) throw DegenerateDataError("normal MLE needs at least 2 observations");
    double mean = 0.0;
    for (const auto& o : data.obs) mean += o.value;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& o : data.obs) {
        const double d = o.value - mean;
        ss += d * d;
    }
    if (!(ss > 0.0))
        throw DegenerateDataError("normal MLE undefined: zero sample variance");
    return MleResult{Theta{mean, std::sqrt(ss / static_cast<double>(n))}, false, ""};
}

// ---------------------------------------------------------------------------
// TwoSampleNormalModel
// ---------------------------------------------------------------------------

TwoSampleNormalModel::TwoSampleNormalModel(double allocation) : allocation_(allocation) {
    if (!(allocation > 0.0 && allocation < 1.0))
        throw std::domain_error("allocation fraction must lie in (0, 1)");
}

bool TwoSampleNormalModel::in_domain(const Theta& theta) const {
    return theta.size() == 3 && std::isfinite(theta[0]) && std::isfinite(theta[1]) &&
           theta[2] > 0.0 && std::isfinite(theta[2]);
}

double TwoSampleNormalModel::log_density(const Observation& x, const Theta& theta) const {
    require_domain(theta);
    if (x.group != 1 && x.group != 2)
        throw std::domain_error("two-sample observation group must be 1 or 2");
    // The group label probability does not depend on theta, so it only adds a
    // constant; it is kept so densities integrate to one over the sample space.
    const double group_term = x.group == 1 ? std::log(allocation_) : std::log(1.0 - allocation_);
    const double mu = x.group == 1 ? theta[0] : theta[1];
    return group_term + normal_log_density(x.value, mu, theta[2]);
}

void TwoSampleNormalModel::score_into(const Observation& x, const Theta& theta,
                                      double* out) const {
    if (x.group != 1 && x.group != 2)
        throw std::domain_error("two-sample observation group must be 1 or 2");
    const double sigma = theta[2];
    const double s2 = sigma * sigma;
    const double mu = x.group == 1 ? theta[0] : theta[1];
    const double d = x.value - mu;
    out[0] = x.group == 1 ? d / s2 : 0.0;
    out[1] = x.group == 2 ? d / s2 : 0.0;
    out[2] = (d * d - s2) / (s2 * sigma);
}

Matrix TwoSampleNormalModel::fisher(const Theta& theta) const {
    require_domain(theta);
    const double s2 = theta[2] * theta[2];
    return Matrix(3, 3,
                  {allocation_ / s2, 0.0, 0.0,
                   0.0, (1.0 - allocation_) / s2, 0.0,
                   0.0, 0.0, 2.0 / s2});
}

Observation TwoSampleNormalModel::sample(const Theta& theta, SplitMix64& rng) const {
    const int group = rng.uniform01() < allocation_ ? 1 : 2;
    const double mu = group == 1 ? theta[0] : theta[1];
    return Observation{mu + theta[2] * norm_quantile(rng.uniform01()), group};
}

MleResult TwoSampleNormalModel::mle(const DataSet& data) const {
    double sum1 = 0.0, sum2 = 0.0;
    std::size_t n1 = 0, n2 = 0;
    for (const auto& o : data.obs) {
        if (o.group == 1) {
            sum1 += o.value;
            ++n1;
        } else if (o.group == 2) {
            sum2 += o.value;
            ++n2;
        } else {
            throw std::domain_error("two-sample observation group must be 1 or 2");
        }
    }
    if (n1 == 0 || n2 == 0)
        throw DegenerateDataError("two-sample MLE needs observations in both groups");
    const double mu1 = sum1 / static_cast<double>(n1);
    const double mu2 = sum2 / static_cast<double>(n2);
    double ss = 0.0;
    for (const auto& o : data.obs) {
        const double d = o.value - (o.group == 1 ? mu1 : mu2);
        ss += d * d;
    }
    if (!(ss > 0.0))
        throw DegenerateDataError("two-sample MLE undefined: zero pooled variance");
    const double sigma = std::sqrt(ss / static_cast<double>(data.size()));
    return MleResult{Theta{mu1, mu2, sigma}, false, ""};
}

// ---------------------------------------------------------------------------
// BernoulliModel
// ---------------------------------------------------------------------------

bool BernoulliModel::in_domain(const Theta& theta) const {
    return theta.size() == 1 && theta[0] > 0.0 && theta[0] < 1.0;
}

double BernoulliModel::log_density(const Observation& x, const Theta& theta) const {
    require_domain(theta);
    if (x.value != 0.0 && x.value != 1.0)
        throw std::domain_error("bernoulli observation must be 0 or 1");
    return x.value == 1.0 ? std::log(theta[0]) : std::log1p(-theta[0]);
}

void BernoulliModel::score_into(const Observation& x, const Theta& theta, double* out) const {
    if (x.value != 0.0 && x.value != 1.0)
        throw std::domain_error("bernoulli observation must be 0 or 1");
    const double p = theta[0];
    out[0] = x.value == 1.0 ? 1.0 / p : -1.0 / (1.0 - p);
}

Matrix BernoulliModel::fisher(const Theta& theta) const {
    require_domain(theta);
    const double p = theta[0];
    return Matrix(1, 1, {1.0 / (p * (1.0 - p))});
}

Observation BernoulliModel::sample(const Theta& theta, SplitMix64& rng) const {
    return Observation{rng.uniform01() < theta[0] ? 1.0 : 0.0, 1};
}

MleResult BernoulliModel::mle(const DataSet& data) const {
    const std::size_t n = data.size();
    if (n == 0) throw DegenerateDataError("bernoulli MLE needs at least 1 observation");
    double sum = 0.0;
    for (const auto& o : data.obs) {
        if (o.value != 0.0 && o.value != 1.0)
            throw std::domain_error("bernoulli observation must be 0 or 1");
        sum += o.value;
    }
    const double lo = 0.5 / static_cast<double>(n);
    const double hi = 1.0 - lo;
    double p = sum / static_cast<double>(n);
    if (p < lo || p > hi) {
        p = std::min(std::max(p, lo), hi);
        return MleResult{Theta{p}, true, "proportion clamped off the domain boundary"};
    }
    return MleResult{Theta{p}, false, ""};
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

FunctionalG mean_functional() {
    return FunctionalG{[](const Theta& t) { return t[0]; },
                       [](const Theta&) {
                           return std::vector<double>{1.0, 0.0};
                       }};
}

FunctionalG mean_difference_functional() {
    return FunctionalG{[](const Theta& t) { return t[0] - t[1]; },
                       [](const Theta&) {
                           return std::vector<double>{1.0, -1.0, 0.0};
                       }};
}

FunctionalG probability_functional(double ref) {
    return FunctionalG{[ref](const Theta& t) { return t[0] - ref; },
                       [](const Theta&) { return std::vector<double>{1.0}; }};
}

// ---------------------------------------------------------------------------
// Free operations
// ---------------------------------------------------------------------------

std::vector<double> score_statistic(const Model& model, const DataSet& data,
                                    const Theta& theta0) {
    if (data.size() == 0) throw std::domain_error("score_statistic needs data");
    model.validate(theta0);
    const std::size_t k = model.dim();
    std::vector<double> acc(k, 0.0), buf(k, 0.0);
    for (const auto& o : data.obs) {
        model.score_into(o, theta0, buf.data());
        for (std::size_t j = 0; j < k; ++j) acc[j] += buf[j];
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (double& v : acc) v *= scale;
    return acc;
}

Matrix fisher_information(const Model& model, const Theta& theta) {
    return model.fisher(theta);
}

MleResult mle(const Model& model, const DataSet& data) { return model.mle(data); }

double functional_sd(const Model& model, const FunctionalG& g, const Theta& theta) {
    const Matrix info = model.fisher(theta);
    const Matrix inv = mat_inverse(info);
    const std::vector<double> grad = g.gradient(theta);
    if (grad.size() != model.dim())
        throw std::domain_error("functional gradient dimension mismatch");
    const double var = quadratic_form(grad, inv);
    if (!(var > 0.0))
        throw NumericalError("functional variance is not positive");
    return std::sqrt(var);
}

}  // namespace equitest
