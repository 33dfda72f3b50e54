#ifndef EQUITEST_ERRORS_HPP
#define EQUITEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace equitest {

// Data that cannot support the requested procedure (zero sample variance,
// empty group, ...). The CLI maps this to its own exit code.
class DegenerateDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numerical failure (singular or ill-conditioned matrix, non-convergence).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg, double condition_estimate = 0.0)
        : std::runtime_error(msg), condition_estimate_(condition_estimate) {}
    double condition_estimate() const { return condition_estimate_; }

  private:
    double condition_estimate_;
};

}  // namespace equitest

#endif
