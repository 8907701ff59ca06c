#include "otd/dmd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "otd/errors.hpp"
#include "otd/numerics/eigs.hpp"
#include "otd/numerics/gram_schmidt.hpp"

namespace otd {

namespace {
using cd = std::complex<double>;
}

DmdResult compute_dmd(const std::vector<std::vector<double>>& snapshots, double sv_rel_tol) {
    if (snapshots.size() < 2) throw contract_violation("compute_dmd: need at least 2 snapshots");
    const std::size_t d = snapshots[0].size();
    if (d == 0) throw contract_violation("compute_dmd: empty snapshots");
    for (const auto& s : snapshots)
        if (s.size() != d) throw contract_violation("compute_dmd: inconsistent snapshot sizes");
    const std::size_t p = snapshots.size() - 1;  // column pairs

    Eigen::MatrixXd x1(d, p), x2(d, p);
    for (std::size_t j = 0; j < p; ++j) {
        x1.col(Eigen::Index(j)) = Eigen::Map<const Eigen::VectorXd>(snapshots[j].data(), d);
        x2.col(Eigen::Index(j)) = Eigen::Map<const Eigen::VectorXd>(snapshots[j + 1].data(), d);
    }

    // Economy SVD of X1 through the p x p Gram matrix: cheap when the state
    // dimension dwarfs the snapshot count, which is the regime here.
    const Eigen::MatrixXd gram = x1.transpose() * x1;
    DenseMatrix g(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) g(i, j) = gram(Eigen::Index(i), Eigen::Index(j));
    const SymmetricEigen ge = symmetric_eigs(g, 1e-8);

    // The cut is phrased in singular values but applied to Gram eigenvalues
    // (sigma^2). Exact zeros surface here as eigenvalues of order eps * lam_max,
    // so the threshold is floored at the Gram noise level: a plain
    // sv_rel_tol * sig_max cut below sqrt(eps) would never truncate anything.
    const double lam_max = std::max(ge.values[0], 0.0);
    const double noise = 64.0 * double(p) * std::numeric_limits<double>::epsilon();
    const double cut = std::max(sv_rel_tol * sv_rel_tol, noise) * lam_max;
    std::size_t rank = 0;
    while (rank < p && ge.values[rank] > cut) ++rank;
    if (rank == 0 || !(lam_max > 0.0))
        throw degeneracy_error("compute_dmd: snapshot matrix rank collapsed", 0);

    Eigen::MatrixXd vr(p, rank);
    Eigen::VectorXd sig_inv(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        sig_inv(Eigen::Index(j)) = 1.0 / std::sqrt(ge.values[j]);
        for (std::size_t i = 0; i < p; ++i) vr(Eigen::Index(i), Eigen::Index(j)) = ge.vectors(i, j);
    }

    const Eigen::MatrixXd u = x1 * vr * sig_inv.asDiagonal();           // d x rank, orthonormal
    const Eigen::MatrixXd atil = u.transpose() * x2 * vr * sig_inv.asDiagonal();

    Eigen::EigenSolver<Eigen::MatrixXd> es(atil);
    if (es.info() != Eigen::Success)
        throw contract_violation("compute_dmd: eigen decomposition failed");
    const Eigen::MatrixXcd y = es.eigenvectors();
    const Eigen::MatrixXcd phi = u * y;

    // Amplitudes: min_b |Phi b - x_0|. With Phi = U Y and U orthonormal this
    // collapses to the rank x rank system Y b = U' x_0.
    const Eigen::VectorXcd z = (u.transpose() * x1.col(0)).cast<cd>();
    const Eigen::VectorXcd b = y.colPivHouseholderQr().solve(z);

    DmdResult out;
    out.state_dim = d;
    out.rank = rank;
    out.ritz.resize(rank);
    out.amplitudes.resize(rank);
    out.modes.assign(rank, std::vector<cd>(d));
    for (std::size_t i = 0; i < rank; ++i) {
        out.ritz[i] = es.eigenvalues()(Eigen::Index(i));
        out.amplitudes[i] = b(Eigen::Index(i));
        for (std::size_t j = 0; j < d; ++j) out.modes[i][j] = phi(Eigen::Index(j), Eigen::Index(i));
    }
    return out;
}

std::vector<std::size_t> dmd_dominance_order(const DmdResult& dmd, DmdRanking ranking) {
    std::vector<std::size_t> order(dmd.rank);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ba = std::abs(dmd.amplitudes[a]), bb = std::abs(dmd.amplitudes[b]);
        const double ra = std::abs(dmd.ritz[a]), rb = std::abs(dmd.ritz[b]);
        if (ranking == DmdRanking::amplitude) return (ba != bb) ? ba > bb : ra > rb;
        return (ra != rb) ? ra > rb : ba > bb;
    });
    return order;
}

OtdBasis dmd_basis(const DynamicalSystem& sys, const DmdResult& dmd, std::size_t count,
                   DmdRanking ranking) {
    if (count == 0) throw contract_violation("dmd_basis: count must be positive");
    if (count > dmd.rank)
        throw contract_violation("dmd_basis: count exceeds available DMD modes");
    if (dmd.state_dim != sys.dim())
        throw contract_violation("dmd_basis: mode dimension does not match the system");

    const std::vector<std::size_t> order = dmd_dominance_order(dmd, ranking);

    // Real and imaginary parts of the selected (complex) modes span the real
    // subspace the restriction acts on; conjugate pairs contribute one plane.
    std::vector<std::vector<double>> candidates;
    candidates.reserve(2 * count);
    for (std::size_t s = 0; s < count; ++s) {
        const auto& m = dmd.modes[order[s]];
        std::vector<double> re(dmd.state_dim), im(dmd.state_dim);
        for (std::size_t j = 0; j < dmd.state_dim; ++j) {
            re[j] = m[j].real();
            im[j] = m[j].imag();
        }
        candidates.push_back(std::move(re));
        candidates.push_back(std::move(im));
    }
    auto inner = [&sys](std::span<const double> a, std::span<const double> b) {
        return sys.inner(a, b);
    };
    std::vector<std::vector<double>> kept = orthonormal_span(candidates, inner, count, 1e-8);
    if (kept.size() < count)
        throw degeneracy_error("dmd_basis: spanning set is rank-deficient", kept.size());
    return OtdBasis::from_modes(kept);
}

ReducedOperator reduce_to_dmd_subspace(const DynamicalSystem& sys, std::span<const double> u,
                                       const DmdResult& dmd, std::size_t count,
                                       DmdRanking ranking, double t) {
    const OtdBasis basis = dmd_basis(sys, dmd, count, ranking);
    auto ws = sys.make_workspace();
    return reduced_operator(sys, t, u, basis, *ws);
}

}  // namespace otd
