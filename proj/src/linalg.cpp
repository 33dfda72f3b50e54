#include "equitest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "equitest/errors.hpp"

namespace equitest {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values)
    : rows_(rows), cols_(cols), a_(values) {
    if (a_.size() != rows * cols)
        throw std::invalid_argument("matrix initializer size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    double scale = 0.0;
    for (double x : a_) scale = std::max(scale, std::fabs(x));
    scale = std::max(scale, 1.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    return true;
}

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += std::fabs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

Matrix mat_inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || n != m.cols()) throw std::domain_error("mat_inverse requires a square matrix");
    if (n > 16) throw std::domain_error("mat_inverse supports order <= 16");

    // Gauss-Jordan with partial pivoting on [M | I].
    Matrix work = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(work(r, col)) > std::fabs(work(pivot, col))) pivot = r;
        const double pv = work(pivot, col);
        if (std::fabs(pv) < 1e-300)
            throw NumericalError("singular matrix in mat_inverse",
                                 std::numeric_limits<double>::infinity());
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const double scale = 1.0 / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }

    const double cond = m.norm1() * inv.norm1();
    if (!(cond < 1e12)) {
        std::ostringstream msg;
        msg << "ill-conditioned matrix in mat_inverse (1-norm condition estimate " << cond
            << ")";
        throw NumericalError(msg.str(), cond);
    }
    return inv;
}

double quadratic_form(std::span<const double> v, const Matrix& m) {
    if (m.rows() != m.cols() || v.size() != m.rows())
        throw std::domain_error("quadratic_form dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
        s += v[i] * row;
    }
    return s;
}

std::vector<double> mat_vec(const Matrix& m, std::span<const double> x) {
    if (x.size() != m.cols()) throw std::domain_error("mat_vec dimension mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

Matrix cholesky_psd(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || n != m.cols()) throw std::domain_error("cholesky_psd requires a square matrix");
    if (!m.is_symmetric(1e-10)) throw std::domain_error("cholesky_psd requires a symmetric matrix");

    Matrix L(n, n);
    const double tol = 1e-12 * std::max(1.0, m.norm1());
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (d < -tol)
            throw NumericalError("matrix is not positive semidefinite in cholesky_psd");
        if (d <= tol) {
            // semidefinite direction: leave the whole column at zero
            continue;
        }
        L(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

}  // namespace equitest
