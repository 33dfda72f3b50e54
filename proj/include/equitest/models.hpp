#ifndef EQUITEST_MODELS_HPP
#define EQUITEST_MODELS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "equitest/linalg.hpp"
#include "equitest/rng.hpp"

namespace equitest {

// Model parameter vector theta.
using Theta = std::vector<double>;

// One observation. `group` is meaningful only for two-sample models; the
// one-sample families read `value` alone.
struct Observation {
    double value = 0.0;
    int group = 1;
};

struct DataSet {
    std::vector<Observation> obs;

    DataSet() = default;
    explicit DataSet(std::span<const double> values);
    std::size_t size() const { return obs.size(); }
};

struct MleResult {
    Theta theta;
    bool clamped = false;   // estimate was moved off the boundary of the domain
    std::string note;
};

// Parametric family contract: per-observation log-density, score, Fisher
// information, sampler, and closed-form maximum-likelihood estimator.
class Model {
  public:
    virtual ~Model() = default;

    virtual std::size_t dim() const = 0;
    virtual const char* name() const = 0;
    virtual bool in_domain(const Theta& theta) const = 0;

    virtual double log_density(const Observation& x, const Theta& theta) const = 0;
    // Writes the k score components to out (length dim()).
    virtual void score_into(const Observation& x, const Theta& theta, double* out) const = 0;
    virtual Matrix fisher(const Theta& theta) const = 0;
    virtual Observation sample(const Theta& theta, SplitMix64& rng) const = 0;
    virtual MleResult mle(const DataSet& data) const = 0;

    std::vector<double> score(const Observation& x, const Theta& theta) const;

    // Throws std::domain_error when theta has the wrong dimension or lies
    // outside the open parameter domain.
    void validate(const Theta& theta) const;

  protected:
    void require_domain(const Theta& theta) const { validate(theta); }
};

// One-sample normal, theta = (mu, sigma), sigma > 0.
class NormalModel final : public Model {
  public:
    std::size_t dim() const override { return 2; }
    const char* name() const override { return "normal"; }
    bool in_domain(const Theta& theta) const override;
    double log_density(const Observation& x, const Theta& theta) const override;
    void score_into(const Observation& x, const Theta& theta, double* out) const override;
    Matrix fisher(const Theta& theta) const override;
    Observation sample(const Theta& theta, SplitMix64& rng) const override;
    // mu-hat = sample mean, sigma-hat = root mean squared deviation (1/n
    // divisor). Throws DegenerateDataError when the sample variance is zero.
    MleResult mle(const DataSet& data) const override;
};

// Two independent normal samples with common sigma, encoded as one i.i.d.
// stream of (group, value) pairs with P(group = 1) = allocation.
// theta = (mu1, mu2, sigma).
class TwoSampleNormalModel final : public Model {
  public:
    explicit TwoSampleNormalModel(double allocation = 0.5);

    std::size_t dim() const override { return 3; }
    const char* name() const override { return "two_sample_normal"; }
    double allocation() const { return allocation_; }
    bool in_domain(const Theta& theta) const override;
    double log_density(const Observation& x, const Theta& theta) const override;
    void score_into(const Observation& x, const Theta& theta, double* out) const override;
    Matrix fisher(const Theta& theta) const override;
    Observation sample(const Theta& theta, SplitMix64& rng) const override;
    MleResult mle(const DataSet& data) const override;

  private:
    double allocation_;
};

// Bernoulli, theta = (p), 0 < p < 1. Observations must be 0 or 1.
class BernoulliModel final : public Model {
  public:
    std::size_t dim() const override { return 1; }
    const char* name() const override { return "bernoulli"; }
    bool in_domain(const Theta& theta) const override;
    double log_density(const Observation& x, const Theta& theta) const override;
    void score_into(const Observation& x, const Theta& theta, double* out) const override;
    Matrix fisher(const Theta& theta) const override;
    Observation sample(const Theta& theta, SplitMix64& rng) const override;
    // p-hat = sample proportion, clamped to [1/(2n), 1 - 1/(2n)] so the
    // estimate stays in the open parameter domain; clamping is flagged.
    MleResult mle(const DataSet& data) const override;
};

// Real-valued functional of theta with gradient.
struct FunctionalG {
    std::function<double(const Theta&)> value;
    std::function<std::vector<double>(const Theta&)> gradient;
};

FunctionalG mean_functional();                       // g(mu, sigma) = mu
FunctionalG mean_difference_functional();            // g(mu1, mu2, sigma) = mu1 - mu2
FunctionalG probability_functional(double ref);      // g(p) = p - ref

// Z_n = n^{-1/2} * sum_i score(x_i, theta0). Throws std::domain_error when
// theta0 is outside the domain or an observation is outside the support.
std::vector<double> score_statistic(const Model& model, const DataSet& data,
                                    const Theta& theta0);

// Fisher information matrix at theta (symmetric positive definite on the
// domain).
Matrix fisher_information(const Model& model, const Theta& theta);

MleResult mle(const Model& model, const DataSet& data);

// sigma_theta = sqrt( grad g(theta) * I(theta)^{-1} * grad g(theta)^T ).
double functional_sd(const Model& model, const FunctionalG& g, const Theta& theta);

}  // namespace equitest

#endif
