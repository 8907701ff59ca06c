#ifndef OTD_NUMERICS_DENSE_MATRIX_HPP
#define OTD_NUMERICS_DENSE_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace otd {

/// Small dense real matrix, row-major. Used for reduced operators and
/// other r-by-r quantities; this is deliberately not a linear algebra
/// library.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// (A + A^T)/2; requires square input.
    DenseMatrix symmetric_part() const;

    double max_abs() const;
    double max_asymmetry() const;  // max |a_ij - a_ji| over a square matrix

    bool finite() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, const std::vector<double>& x);

}  // namespace otd

#endif
