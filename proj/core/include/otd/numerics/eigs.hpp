#ifndef OTD_NUMERICS_EIGS_HPP
#define OTD_NUMERICS_EIGS_HPP

#include <vector>

#include "otd/numerics/dense_matrix.hpp"

namespace otd {

struct SymmetricEigen {
    std::vector<double> values;  ///< sorted descending
    DenseMatrix vectors;         ///< column i pairs with values[i]
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input must be symmetric to within `sym_tol`:
///   max_ij |a_ij - a_ji| <= sym_tol * max_ij |a_ij|.
/// Throws contract_violation for a non-square input and symmetry_error when
/// the tolerance is exceeded. Rotations act on the explicitly symmetrized
/// matrix, so the returned factors satisfy A w = lambda w to round-off.
SymmetricEigen symmetric_eigs(const DenseMatrix& a, double sym_tol = 1e-10);

}  // namespace otd

#endif
