#include "otd/numerics/dense_matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "otd/errors.hpp"

namespace otd {

DenseMatrix DenseMatrix::symmetric_part() const {
    if (rows_ != cols_)
        throw contract_violation("symmetric_part: matrix is not square");
    DenseMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return s;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::max_asymmetry() const {
    if (rows_ != cols_)
        throw contract_violation("max_asymmetry: matrix is not square");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

bool DenseMatrix::finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw contract_violation("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> operator*(const DenseMatrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size())
        throw contract_violation("matrix-vector product: dimensions differ");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

}  // namespace otd
