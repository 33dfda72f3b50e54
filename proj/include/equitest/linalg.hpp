#ifndef EQUITEST_LINALG_HPP
#define EQUITEST_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace equitest {

// Small dense row-major matrix; everything here targets k <= 16.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    bool is_symmetric(double tol = 1e-12) const;
    double norm1() const;  // max absolute column sum

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Inverse by Gauss-Jordan elimination with partial pivoting; requires a
// square matrix of order <= 16. Throws NumericalError carrying a 1-norm
// condition estimate when the matrix is singular or the estimate exceeds
// 1e12. The result satisfies M * inv(M) = I to 1e-9 per entry for any
// matrix this accepts.
Matrix mat_inverse(const Matrix& m);

// v^T M v
double quadratic_form(std::span<const double> v, const Matrix& m);

// y = M x
std::vector<double> mat_vec(const Matrix& m, std::span<const double> x);

// Lower-triangular Cholesky factor of a symmetric positive semidefinite
// matrix; zero pivots are tolerated (the corresponding columns are zeroed),
// so singular covariances can still be sampled from.
Matrix cholesky_psd(const Matrix& m);

}  // namespace equitest

#endif
