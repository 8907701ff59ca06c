#ifndef OTD_DMD_HPP
#define OTD_DMD_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "otd/engine.hpp"

namespace otd {

/// Ritz pairs of the companion operator fitted to an evenly spaced snapshot
/// sequence (Schmid's algorithm via the Gram matrix of the first snapshot
/// block). Mode i obeys x(t_k) ~ sum_i b_i phi_i ritz_i^k.
struct DmdResult {
    std::size_t state_dim = 0;
    std::size_t rank = 0;                                   // retained singular directions
    std::vector<std::complex<double>> ritz;                 // discrete-time eigenvalues
    std::vector<std::complex<double>> amplitudes;           // least squares against x_0
    std::vector<std::vector<std::complex<double>>> modes;   // rank rows of length state_dim
};

/// Snapshots are rows of equal length, one per sample time, uniformly spaced.
/// Singular directions below sv_rel_tol * sigma_max are truncated; total rank
/// collapse throws a degeneracy error carrying the retained rank.
DmdResult compute_dmd(const std::vector<std::vector<double>>& snapshots,
                      double sv_rel_tol = 1e-10);

enum class DmdRanking {
    amplitude,     // |b_i|, ties by |ritz_i|
    ritz_modulus,  // |ritz_i|, ties by |b_i|
};

/// Mode indices from most to least dominant under the chosen ranking.
std::vector<std::size_t> dmd_dominance_order(const DmdResult& dmd, DmdRanking ranking);

/// Restrict L_u at state u to the span of the `count` most dominant DMD
/// modes: their real and imaginary parts are orthonormalized (in the system
/// inner product) into a `count`-vector basis and the reduced operator is
/// formed exactly as for an OTD basis. Throws a degeneracy error if the
/// spanning set cannot fill `count` directions.
ReducedOperator reduce_to_dmd_subspace(const DynamicalSystem& sys, std::span<const double> u,
                                       const DmdResult& dmd, std::size_t count = 8,
                                       DmdRanking ranking = DmdRanking::amplitude,
                                       double t = 0.0);

/// The orthonormalized basis described above, exposed so callers evaluating
/// long snapshot series can build it once and reuse it.
OtdBasis dmd_basis(const DynamicalSystem& sys, const DmdResult& dmd, std::size_t count = 8,
                   DmdRanking ranking = DmdRanking::amplitude);

}  // namespace otd

#endif
